#include "json_writer.hpp"

#include <charconv>
#include <cmath>

namespace disclinate::cli {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (value == 0.0) return "0";  // folds -0
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

void write_indent(std::ostream& out, int depth) {
    for (int d = 0; d < depth; ++d) out << "  ";
}

void write_value(std::ostream& out, const Json& v, int depth) {
    switch (v.type()) {
        case Json::value_t::object: {
            if (v.empty()) {
                out << "{}";
                return;
            }
            out << "{\n";
            std::size_t n = 0;
            for (const auto& [key, item] : v.items()) {
                write_indent(out, depth + 1);
                out << Json(key).dump() << ": ";
                write_value(out, item, depth + 1);
                out << (++n < v.size() ? ",\n" : "\n");
            }
            write_indent(out, depth);
            out << '}';
            return;
        }
        case Json::value_t::array: {
            if (v.empty()) {
                out << "[]";
                return;
            }
            bool scalars = true;
            for (const auto& item : v) scalars = scalars && !item.is_structured();
            if (scalars) {
                out << '[';
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) out << ", ";
                    write_value(out, v[i], depth);
                }
                out << ']';
                return;
            }
            out << "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                write_indent(out, depth + 1);
                write_value(out, v[i], depth + 1);
                out << (i + 1 < v.size() ? ",\n" : "\n");
            }
            write_indent(out, depth);
            out << ']';
            return;
        }
        case Json::value_t::number_float: {
            const double d = v.get<double>();
            out << (std::isfinite(d) ? format_number(d) : "null");
            return;
        }
        default:
            out << v.dump();
    }
}

}  // namespace

void write_json(std::ostream& out, const Json& value) {
    write_value(out, value, 0);
    out << '\n';
}

}  // namespace disclinate::cli

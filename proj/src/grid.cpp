#include "disclinate/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace disclinate {

void GridSpec::validate() const {
    if (!(spacing > 0.0) || !std::isfinite(spacing)) throw std::invalid_argument("grid spacing must be positive");
    if (dims[0] < 2 || dims[1] < 2) throw std::invalid_argument("grid dims must be at least 2x2");
    if (!std::isfinite(origin.x) || !std::isfinite(origin.y)) throw std::invalid_argument("grid origin must be finite");
}

GridField::GridField(GridSpec spec, std::size_t components, double fill)
    : spec_(spec), components_(components) {
    spec_.validate();
    if (components == 0) throw std::invalid_argument("GridField needs at least one component");
    values_.assign(spec_.node_count() * components_, fill);
}

void BoxSpec::validate() const {
    if (!(spacing > 0.0) || !std::isfinite(spacing)) throw std::invalid_argument("box spacing must be positive");
    for (auto d : dims)
        if (d < 2) throw std::invalid_argument("box dims must be at least 2x2x2");
}

double BoxSpec::volume() const {
    double v = 1.0;
    for (auto d : dims) v *= spacing * static_cast<double>(d - 1);
    return v;
}

BoxField::BoxField(BoxSpec spec, std::size_t components, double fill)
    : spec_(spec), components_(components) {
    spec_.validate();
    if (components == 0) throw std::invalid_argument("BoxField needs at least one component");
    values_.assign(spec_.node_count() * components_, fill);
}

double BoxField::padded(long i, long j, long k, std::size_t c) const {
    if (i < 0 || j < 0 || k < 0) return 0.0;
    if (static_cast<std::size_t>(i) >= spec_.dims[0] || static_cast<std::size_t>(j) >= spec_.dims[1] ||
        static_cast<std::size_t>(k) >= spec_.dims[2])
        return 0.0;
    return (*this)(static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(k), c);
}

double BoxField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool BoxField::zero_on_boundary_shell() const {
    const auto& d = spec_.dims;
    for (std::size_t k = 0; k < d[2]; ++k)
        for (std::size_t j = 0; j < d[1]; ++j)
            for (std::size_t i = 0; i < d[0]; ++i) {
                const bool shell = i == 0 || j == 0 || k == 0 || i + 1 == d[0] || j + 1 == d[1] || k + 1 == d[2];
                if (!shell) continue;
                for (std::size_t c = 0; c < components_; ++c)
                    if ((*this)(i, j, k, c) != 0.0) return false;
            }
    return true;
}

}  // namespace disclinate

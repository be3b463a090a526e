#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "disclinate/disclination_field.hpp"

namespace disclinate {

/// Uniform node lattice in the plane: node (i, j) sits at origin + h (i, j).
struct GridSpec {
    Point2 origin;
    double spacing = 1.0;
    std::array<std::size_t, 2> dims{2, 2};

    /// Throws std::invalid_argument unless spacing > 0 and dims >= 2x2.
    void validate() const;
    Point2 node(std::size_t i, std::size_t j) const {
        return {origin.x + spacing * static_cast<double>(i), origin.y + spacing * static_cast<double>(j)};
    }
    std::size_t node_count() const { return dims[0] * dims[1]; }
    bool operator==(const GridSpec&) const = default;
};

/// Sampled field on a GridSpec; `components` values per node, x index fastest.
class GridField {
public:
    GridField(GridSpec spec, std::size_t components, double fill = 0.0);

    const GridSpec& spec() const noexcept { return spec_; }
    std::size_t components() const noexcept { return components_; }

    double& operator()(std::size_t i, std::size_t j, std::size_t c = 0) {
        return values_[(j * spec_.dims[0] + i) * components_ + c];
    }
    double operator()(std::size_t i, std::size_t j, std::size_t c = 0) const {
        return values_[(j * spec_.dims[0] + i) * components_ + c];
    }

    std::vector<double>& values() noexcept { return values_; }
    const std::vector<double>& values() const noexcept { return values_; }

private:
    GridSpec spec_;
    std::size_t components_;
    std::vector<double> values_;
};

/// Uniform node lattice in a 3D box.
struct BoxSpec {
    std::array<double, 3> origin{0.0, 0.0, 0.0};
    double spacing = 1.0;
    std::array<std::size_t, 3> dims{2, 2, 2};

    void validate() const;
    std::array<double, 3> node(std::size_t i, std::size_t j, std::size_t k) const {
        return {origin[0] + spacing * static_cast<double>(i), origin[1] + spacing * static_cast<double>(j),
                origin[2] + spacing * static_cast<double>(k)};
    }
    std::size_t node_count() const { return dims[0] * dims[1] * dims[2]; }
    double volume() const;
    bool operator==(const BoxSpec&) const = default;
};

class BoxField {
public:
    BoxField(BoxSpec spec, std::size_t components, double fill = 0.0);

    const BoxSpec& spec() const noexcept { return spec_; }
    std::size_t components() const noexcept { return components_; }

    std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
        return (k * spec_.dims[1] + j) * spec_.dims[0] + i;
    }
    double& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t c) {
        return values_[index(i, j, k) * components_ + c];
    }
    double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t c) const {
        return values_[index(i, j, k) * components_ + c];
    }
    /// Value at a possibly out-of-range node; outside the box the field is zero.
    double padded(long i, long j, long k, std::size_t c) const;

    double max_abs() const;
    /// True if every value on the outermost node layer is exactly zero.
    bool zero_on_boundary_shell() const;

    std::vector<double>& values() noexcept { return values_; }
    const std::vector<double>& values() const noexcept { return values_; }

private:
    BoxSpec spec_;
    std::size_t components_;
    std::vector<double> values_;
};

}  // namespace disclinate

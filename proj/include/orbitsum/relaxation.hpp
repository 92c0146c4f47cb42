#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace orbitsum {

/// The relaxation sequence (alpha_n) of a Krasnosel'skii-Mann iteration.
/// Every value lies strictly inside (0, 1).
class RelaxationSchedule {
public:
    enum class Kind { constant, harmonic, list };

    static RelaxationSchedule constant(double alpha);
    /// alpha_n = alpha / (n + 1)
    static RelaxationSchedule harmonic(double alpha);
    static RelaxationSchedule explicit_list(std::vector<double> values);

    Kind kind() const noexcept { return kind_; }
    double base() const noexcept { return base_; }
    const std::vector<double>& values() const noexcept { return values_; }

    /// Number of defined terms; SIZE_MAX for the unbounded kinds.
    std::size_t length() const noexcept;
    /// Throws ConfigError past the end of an explicit list.
    double at(std::size_t n) const;

    std::string_view kind_name() const noexcept;

private:
    Kind kind_ = Kind::constant;
    double base_ = 0.5;
    std::vector<double> values_;
};

}  // namespace orbitsum

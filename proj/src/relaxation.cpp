#include "orbitsum/relaxation.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "orbitsum/error.hpp"

namespace orbitsum {

namespace {

void require_open_unit(double a, const char* what) {
    if (!(a > 0.0 && a < 1.0))
        throw ConfigError(std::string(what) + " must lie in the open interval (0, 1), got " +
                          std::to_string(a));
}

}  // namespace

RelaxationSchedule RelaxationSchedule::constant(double alpha) {
    require_open_unit(alpha, "relaxation alpha");
    RelaxationSchedule s;
    s.kind_ = Kind::constant;
    s.base_ = alpha;
    return s;
}

RelaxationSchedule RelaxationSchedule::harmonic(double alpha) {
    require_open_unit(alpha, "relaxation alpha");
    RelaxationSchedule s;
    s.kind_ = Kind::harmonic;
    s.base_ = alpha;
    return s;
}

RelaxationSchedule RelaxationSchedule::explicit_list(std::vector<double> values) {
    if (values.empty()) throw ConfigError("relaxation list must be nonempty");
    for (double v : values) require_open_unit(v, "relaxation list entry");
    RelaxationSchedule s;
    s.kind_ = Kind::list;
    s.values_ = std::move(values);
    s.base_ = s.values_.front();
    return s;
}

std::size_t RelaxationSchedule::length() const noexcept {
    return kind_ == Kind::list ? values_.size() : std::numeric_limits<std::size_t>::max();
}

double RelaxationSchedule::at(std::size_t n) const {
    switch (kind_) {
        case Kind::constant: return base_;
        case Kind::harmonic: return base_ / static_cast<double>(n + 1);
        case Kind::list:
            if (n >= values_.size())
                throw ConfigError("relaxation schedule exhausted at step " + std::to_string(n));
            return values_[n];
    }
    return base_;
}

std::string_view RelaxationSchedule::kind_name() const noexcept {
    switch (kind_) {
        case Kind::constant: return "constant";
        case Kind::harmonic: return "harmonic";
        case Kind::list: return "list";
    }
    return "?";
}

}  // namespace orbitsum

#pragma once

#include <complex>
#include <string>

namespace osar {

enum class FilterKind { rf, mf, wf };

struct FilterSpec {
    FilterKind kind = FilterKind::mf;
    double snr_in_linear = 0.0;  // used by wf only

    static FilterSpec rf() { return {FilterKind::rf, 0.0}; }
    static FilterSpec mf() { return {FilterKind::mf, 0.0}; }
    static FilterSpec wf(double snr) { return {FilterKind::wf, snr}; }

    void validate() const;
    std::complex<double> gain(std::complex<double> s) const;
    // chi = s g, real and non-negative for all three filters
    double chi(std::complex<double> s) const;
};

std::string filter_name(FilterKind k);
FilterKind filter_from_name(const std::string& name);

}  // namespace osar

#pragma once

#include "solenoid/spectral.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace solenoid::report {

using nlohmann::json;

// every report carries {"schema": 1} and is byte-deterministic for a
// fixed configuration and seed

json analyze_matrix(const std::string& matrix);
json group_report(const std::string& matrix);

struct SpectrumOptions {
    std::string matrix;
    int level = 1;
    std::string cutoff = "40";      // eigenvalue-scale bound, decimal/rational
    std::string freq_radius;        // exact frequency radius; overrides cutoff
    bool check_equivalence = false;
};
json spectrum_report(const SpectrumOptions& opt);
std::string spectrum_csv(const dirac::SpectrumMultiset& spec);
dirac::SpectrumMultiset build_torus_spectrum(const SpectrumOptions& opt);

json zeta_report(const std::string& matrix, int level, const std::string& cutoff,
                 const std::vector<double>& s_values);

json radii_report(const std::string& model, const std::string& matrix,
                  const std::string& theta, int uhf_r, const std::string& uhf_s,
                  int k_max);

json nctorus_report(const std::string& theta, const std::string& matrix);

json uhf_report(int r, const std::string& s, const std::vector<int>& levels,
                int k_max);

json appendix_report(int dim, int trials, int grid, std::uint64_t seed);

json full_report(std::uint64_t seed);

} // namespace solenoid::report

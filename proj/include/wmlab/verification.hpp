#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "wmlab/dimension.hpp"
#include "wmlab/kernels.hpp"

namespace wmlab {

// Uniform doubles from mt19937_64 with an explicit 53-bit mapping, so that a
// seed gives the same stream on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    std::vector<std::pair<std::string, double>> metrics;
    std::vector<Table> tables;
    double seconds = 0.0;  // wall time; kept out of deterministic outputs
};

struct VerifyOptions {
    std::uint64_t seed = 20261016;
    int evolution_n = 32;
    int collocation_n = 32;
    Execution exec = Execution::parallel;
};

inline constexpr int kCriterionCount = 11;

struct NormExponent {
    int component;  // 1: psi/r, 2: psi_t/r
    int order;
    double fitted;
    double expected;  // d/2 - k, or d/2 - l - 1 for the time derivative
};

// Log-log slopes of the homogeneous seminorms of psi^T(T - s, .)/r and
// psi^T_t(T - s, .)/r on the ball of radius s, over the given radii.
std::vector<NormExponent> profile_norm_exponents(const Dimension& dim, const std::vector<double>& radii, int n);

CriterionResult check_profile_residual(const VerifyOptions& opt);
CriterionResult check_gauge_eigenpair(const VerifyOptions& opt);
CriterionResult check_spectral_gap(const VerifyOptions& opt);
CriterionResult check_unstable_rate(const VerifyOptions& opt);
CriterionResult check_free_decay(const VerifyOptions& opt);
CriterionResult check_stable_decay(const VerifyOptions& opt);
CriterionResult check_T_recovery(const VerifyOptions& opt);
CriterionResult check_norm_scaling(const VerifyOptions& opt);
CriterionResult check_nonlinearity(const VerifyOptions& opt);
CriterionResult check_appendix(const VerifyOptions& opt);

// Criterion 11 compares two byte streams produced by independent repeats.
CriterionResult check_determinism(const std::vector<std::pair<std::string, std::string>>& first,
                                  const std::vector<std::pair<std::string, std::string>>& second);

std::string criterion_name(int id);

// Runs criterion id in 1..10; throws std::out_of_range otherwise.
CriterionResult run_criterion(int id, const VerifyOptions& opt);

// Parses "1-10", "3", "1,4,7-9" into sorted unique ids in 1..11.
std::vector<int> parse_criteria(const std::string& spec);

}  // namespace wmlab

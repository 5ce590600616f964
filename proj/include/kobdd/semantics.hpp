#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kobdd/program.hpp"

namespace kobdd {

using Amplitudes = std::vector<std::complex<double>>;
using Distribution = std::vector<double>;

/// Follows the unique computation path. Requires a valid deterministic program.
bool eval_det(Program const& p, Assignment const& x);

/// Existential acceptance by forward propagation of reachable node sets.
bool eval_nondet(Program const& p, Assignment const& x);

/// Called after each of the k*n steps with the 1-based step index.
using AmplitudeObserver = std::function<void(std::size_t, std::span<std::complex<double> const>)>;
using DistributionObserver = std::function<void(std::size_t, std::span<double const>)>;

Amplitudes final_amplitudes(Program const& p, Assignment const& x, AmplitudeObserver const& observe = {});
Distribution final_distribution(Program const& p, Assignment const& x, DistributionObserver const& observe = {});

/// Acceptance probability of a probabilistic or quantum program; a single
/// measurement after the last step. Quantum probabilities use |v_i|^2.
double accept_prob(Program const& p, Assignment const& x);

/// Acceptance as a real number for every semantics (0/1 for the classical
/// deterministic and nondeterministic models).
double acceptance(Program const& p, Assignment const& x);

/// A Boolean function on n variables given by an evaluator.
struct FunctionOracle {
    int n = 0;
    std::function<bool(Assignment const&)> eval;
    std::string name;

    bool operator()(Assignment const& x) const { return eval(x); }
};

inline constexpr int kExhaustiveLimit = 24;
inline constexpr double kProbabilitySlack = 1e-9;

/// True iff every 1-input is accepted with probability >= 1/2 + eps and
/// every 0-input with probability <= 1/2 - eps (1e-9 slack). Enumerates all
/// 2^n inputs, so n is limited to kExhaustiveLimit.
bool computes_bounded_error(Program const& p, FunctionOracle const& f, double eps);

} // namespace kobdd

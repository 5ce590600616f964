#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kobdd/program.hpp"
#include "kobdd/subfunctions.hpp"

namespace kobdd {

/// The unnamed constants of the probabilistic and quantum lower-bound
/// lemmas. Every report carries the values it was computed with.
struct Constants {
    double c = 1.0;
    double c1 = 8.0;
    double c2 = 1.0;
    double c3 = 1.0;

    bool operator==(Constants const&) const = default;
};

enum class Model { det, nondet, prob, quantum };

std::string_view to_string(Model m) noexcept;
Model model_of(Semantics s) noexcept;

/// log2 of the largest subfunction count a width-w, k-layer program of the
/// given model can realise:
///   det      ((k-1)w + 1) log w
///   nondet   w((k-1)w + 1)
///   prob     (k+1) w^2 log(C1 k (C2 + log w + log k))
///   quantum  C (kw)^2 log w
/// Widths are real because hierarchy arguments plug in fractional widths;
/// k >= 1 and w >= 1 are required, as are positive constants.
double bound_log2(Model model, double k, double w, Constants const& constants = {});

enum class LowerBound { saf, saf_cor, mxpj, mxpj_cor };

std::string_view to_string(LowerBound b) noexcept;

/// log2 of the subfunction lower bounds of the hard functions:
///   saf       (k-1)(w-2) log w
///   saf_cor   (kw/6) log w
///   mxpj      floor(d/3 - 1)(k-3) log d
///   mxpj_cor  (dk/16) log d
double lower_log2(LowerBound bound, int k, int w_or_d);

enum class Chain { hi_n, hi_p, hi_q, s5_obdd, s5_nobdd, s5_pobdd, h_kobdd };

std::string_view to_string(Chain c) noexcept;
/// Accepts the dashed names "hi-n", "s5-obdd", ...; throws std::invalid_argument otherwise.
Chain chain_from_string(std::string_view name);
std::vector<Chain> all_chains();

/// Thrown when the reduced width of a chain is below 1 or the parameters
/// are outside the theorem's stated regime.
class OutOfRegime : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// One line of a hierarchy proof, in log2 of the ratio N(f) / bound.
/// `relation` says how this line relates to the previous one ("=" or ">=").
struct ChainStep {
    std::string relation;
    double value = 0.0;
};

struct BoundReport {
    Chain chain = Chain::hi_n;
    int k = 0;
    /// w for the SAF chains, d for the MXPJ chains.
    int size = 0;
    Constants constants;
    double reduced_width = 0.0;
    double lhs_log2 = 0.0;
    double rhs_log2 = 0.0;
    /// lhs_log2 - rhs_log2, i.e. the first step of the chain.
    double margin = 0.0;
    /// Successive lines of the proof, starting with the margin.
    std::vector<ChainStep> steps;
    bool constant_dependent = false;

    double final_step() const { return steps.back().value; }
    /// Each '=' step agrees with its predecessor to 1e-9 (relative) and each
    /// '>=' step does not exceed it.
    bool steps_consistent() const;
};

/// Evaluates a hierarchy inequality chain at concrete parameters. The
/// witness lower bound is compared with the model bound at the reduced width
/// named by the theorem (sqrt(w)/2 for hi-n, sqrt(w)/(log k log w) for hi-p,
/// sqrt(d/(C1 k)) for hi-q, d/32, sqrt(d log d / 33) and sqrt(d / log k) for
/// the three MXPJ non-membership chains, floor(w/16) - 3 for h-kobdd).
BoundReport check_chain(Chain chain, int k, int w_or_d, Constants const& constants = {});

/// N(f) against the lemma bound for p's model at p's layer count and width.
struct EmpiricalBoundReport {
    Model model = Model::det;
    int k = 0;
    int width = 0;
    /// "N" (minimum over orders) or "N^pi" (the program's own order, quantum).
    std::string measure;
    std::uint64_t subfunctions = 0;
    double bound_log2 = 0.0;
    /// Exact bound for det/nondet, saturated at 2^64 - 1.
    std::optional<std::uint64_t> exact_bound;
    bool holds = false;
};

EmpiricalBoundReport empirical_bound_check(Program const& p, TruthTable const& f, Constants const& constants = {});

/// b^e saturated at 2^64 - 1.
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) noexcept;

} // namespace kobdd

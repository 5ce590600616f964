#pragma once

// Test-only helpers: random program generators and independent reference
// oracles that do not share code with the library implementations.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kobdd/functions.hpp"
#include "kobdd/program.hpp"
#include "kobdd/subfunctions.hpp"

namespace kobdd::testing {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi] taken directly from raw generator output.
int uniform(Rng& rng, int lo, int hi);
double unit(Rng& rng);
Assignment random_assignment(Rng& rng, int n);

/// Haar-like random unitary: Gram-Schmidt on a complex Gaussian matrix.
UnitaryMatrix random_unitary(Rng& rng, int w);
/// Column-stochastic width_out x width_in matrix with strictly positive entries.
StochasticMatrix random_stochastic(Rng& rng, int width_out, int width_in);

struct ProgramShape {
    int n = 0;
    int k = 0;
    int max_width = 0;
};

/// Random valid program with the given semantics. Orders are random
/// permutations; classical widths vary per level, quantum width is fixed.
Program random_program(Rng& rng, Semantics s, ProgramShape shape);
/// Random deterministic program whose every transition is a bijection of a
/// fixed width, so it can be compiled to a quantum program.
Program random_reversible_program(Rng& rng, ProgramShape shape);

/// Direct simulation of the pointer-jumping walk from the raw bit string.
bool mxpj_reference(Assignment const& x, int k, int d);

/// SAF input whose Step recurrence follows chosen values and ends at a
/// nonzero Step2 (so the function value is 1). Unused blocks are filled with
/// random addresses that cannot shadow the chosen ones.
Assignment saf_witness(Rng& rng, SafLayout const& layout, bool positive = true);

/// Subfunction count at a cut by literal enumeration of restrictions into a
/// set of strings.
std::uint64_t naive_subfunctions(TruthTable const& f, std::vector<int> const& fixed_vars);
/// N(f) by enumerating all n! orders.
std::uint64_t factorial_n_min(TruthTable const& f);

TruthTable random_table(Rng& rng, int n);

/// Writes `text` to a fresh file under the system temp directory.
std::string temp_file(std::string const& stem, std::string const& text);

} // namespace kobdd::testing

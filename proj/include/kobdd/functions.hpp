#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kobdd/program.hpp"
#include "kobdd/semantics.hpp"

namespace kobdd {

/// Smallest c with 2^c >= x (0 for x <= 1).
int ceil_log2(long long x) noexcept;

// ---------------------------------------------------------------------------
// Shuffled address function SAF_{k,w}
// ---------------------------------------------------------------------------

/// Block structure of SAF_{k,w} over n variables. There are 2kw blocks of
/// `block_len` consecutive variables each, tiling a prefix of the input; the
/// remaining variables are padding. Inside a block the first `k_bits`
/// variables are the step address, the next `w_bits` the slot address, and the
/// rest are value bits. All fields are read least significant bit first.
struct SafLayout {
    int n = 0;
    int k = 0;
    int w = 0;
    int block_len = 0;
    int k_bits = 0;
    int w_bits = 0;
    int value_bits = 0;

    /// Throws std::invalid_argument unless 2kw(2w + ceil log k + ceil log 2w) < n.
    static SafLayout make(int k, int w, int n);
    /// Same tiling without the defining inequality; only requires every
    /// block to hold the address bits and at least one value bit.
    static SafLayout make_relaxed(int k, int w, int n);
    static bool admissible(int k, int w, int n) noexcept;

    int blocks() const noexcept { return 2 * k * w; }
    int address_bits() const noexcept { return k_bits + w_bits; }
    /// 1-based variable of the j-th address bit (y^p_j) of block p.
    int address_var(int p, int j) const noexcept { return p * block_len + j + 1; }
    /// 1-based variable of the j-th value bit (x^p_j) of block p.
    int value_var(int p, int j) const noexcept { return p * block_len + address_bits() + j + 1; }
    /// Variables past the last block do not influence the function.
    int covered_vars() const noexcept { return blocks() * block_len; }
};

int adr_k(Assignment const& x, SafLayout const& layout, int p);
int adr_w(Assignment const& x, SafLayout const& layout, int p);
/// Minimal block addressed by (slot i, step t), or -1.
int ind(Assignment const& x, SafLayout const& layout, int i, int t);
/// Value-bit sum of block ind(x, i, t) modulo w, or -1.
int val(Assignment const& x, SafLayout const& layout, int i, int t);

struct StepPair {
    int step1 = 0;
    int step2 = 0;
    bool operator==(StepPair const&) const = default;
};

/// (Step1(x,t), Step2(x,t)) for -1 <= t <= k-1. At t = -1 the pair is the seed
/// (0, 0). A missing block makes the step -1, which then stays -1.
StepPair step_pair(Assignment const& x, SafLayout const& layout, int t);

bool saf_eval(Assignment const& x, SafLayout const& layout);

// ---------------------------------------------------------------------------
// Matrix XOR pointer jumping MXPJ_{2k,d}
// ---------------------------------------------------------------------------

/// fa[i][v] = f_{A,i+1}(v), fb[i][v] = f_{B,i+1}(v). d is a power of two.
struct MxpjInstance {
    int k = 0;
    int d = 0;
    std::vector<std::vector<int>> fa;
    std::vector<std::vector<int>> fb;

    static MxpjInstance zero(int k, int d);

    int bits_per_block() const noexcept { return ceil_log2(d); }
    int n() const noexcept { return 2 * k * d * bits_per_block(); }

    bool operator==(MxpjInstance const&) const = default;
};

/// Throws std::invalid_argument unless k >= 1 and d >= 2 is a power of two.
void check_mxpj_parameters(int k, int d);

/// 1-based variable of bit `bit` of the block holding f_{A,i}(j) (half 0) or
/// f_{B,i}(j) (half 1); i in 1..k, j in 0..d-1.
int mxpj_var(int k, int d, int half, int i, int j, int bit);

Assignment encode_mxpj(MxpjInstance const& inst);
/// Throws std::invalid_argument when |x| != 2kd log d.
MxpjInstance decode_mxpj(Assignment const& x, int k, int d);

/// Plain pointer jumping with f_{A,1}, f_{B,1} alternating from v_0 = 0.
int pj_vertex(MxpjInstance const& inst, int steps);
bool pj_eval(MxpjInstance const& inst, int steps);

/// f^(2k)(v_0) of the XOR recurrence, with f^(-1) = f^(0) = v_0 = 0.
int mxpj_vertex(MxpjInstance const& inst);
bool mxpj_eval(MxpjInstance const& inst);
bool mxpj_eval(Assignment const& x, int k, int d);

bool parity(unsigned v) noexcept;

// ---------------------------------------------------------------------------
// Function descriptors: "saf:k,w,n", "mxpj:k,d", "xor:n", "and:n"
// ---------------------------------------------------------------------------

struct Descriptor {
    std::string name;
    std::vector<std::string> args;

    /// Splits "name:a,b,c". Throws std::invalid_argument on an empty name.
    static Descriptor parse(std::string_view text);
    /// Integer argument i; throws std::invalid_argument if absent or not an integer.
    int integer(std::size_t i) const;
};

/// Throws std::invalid_argument for unknown names or bad parameters.
FunctionOracle make_function(std::string_view descriptor);

} // namespace kobdd

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "kobdd/functions.hpp"
#include "kobdd/program.hpp"

namespace kobdd {

/// k-layer id-ordered deterministic program of width d^2 computing
/// MXPJ_{2k,d}. Nodes of every level are the pairs (u, v) in {0..d-1}^2,
/// numbered u*d + v + 1. During layer i the program XORs the block
/// f_{A,i}(v) into u and then the block f_{B,i}(u) into v, so it enters
/// layer i holding (f^(2i-3), f^(2i-2)) and leaves it holding
/// (f^(2i-1), f^(2i)). Every level map is a bijection; the accepting sinks
/// are the pairs whose v has odd parity.
Program build_mxpj_id_obdd(int k, int d);

/// Node number of the pair (u, v) in build_mxpj_id_obdd.
inline int mxpj_node(int d, int u, int v) noexcept { return u * d + v + 1; }

/// 2k-layer id-ordered deterministic program computing SAF_{k,w} on n
/// variables. Layer 2t+1 looks up Step1(t) from the held Step2(t-1), layer
/// 2t+2 looks up Step2(t). Within a layer a node is one of: searching with
/// pointer i (plus the set of still-matching address suffixes of the current
/// block), accumulating the value sum of the matched block, done with the
/// looked-up value, or dead. Only reachable nodes are materialised.
///
/// Width is at most 3w+1 when w is a power of two and k is a power of two or
/// 3. Otherwise an address field reduced mod k or mod 2w can have two live
/// preimages plus a mismatch status per pointer, and the width is at most 4w+1.
Program build_saf_2k_obdd(int k, int w, int n);
Program build_saf_2k_obdd(SafLayout const& layout);

class NonReversibleError : public std::invalid_argument {
public:
    NonReversibleError(std::size_t level, std::string const& why)
        : std::invalid_argument("level " + std::to_string(level) + " is not reversible: " + why), level_(level)
    {}

    /// 1-based level index.
    std::size_t level() const noexcept { return level_; }

private:
    std::size_t level_;
};

/// Permutation embedding: each bijective level map becomes its permutation
/// matrix. Throws NonReversibleError naming the first offending level.
Program compile_to_quantum(Program const& p);

/// Graph-of-function relation per level.
Program compile_to_nondet(Program const& p);

/// 0/1 column-stochastic matrices per level.
Program compile_to_prob(Program const& p);

} // namespace kobdd

#include "kobdd/subfunctions.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <stdexcept>

namespace kobdd {

TruthTable::TruthTable(int n) : n_(n)
{
    if (n < 0 || n > 30) { throw std::invalid_argument("truth table arity out of range"); }
    words_.assign(std::max<std::uint64_t>(1, (std::uint64_t{1} << n) / 64), 0);
}

void TruthTable::set(std::uint64_t index, bool value)
{
    std::uint64_t const bit = std::uint64_t{1} << (index & 63);
    if (value) {
        words_[index >> 6] |= bit;
    } else {
        words_[index >> 6] &= ~bit;
    }
}

TruthTable TruthTable::from_function(FunctionOracle const& f)
{
    if (f.n > kSubfunctionLimit) {
        throw std::invalid_argument("truth tables are limited to n <= " + std::to_string(kSubfunctionLimit));
    }
    TruthTable t(f.n);
    for (std::uint64_t i = 0; i < t.size(); ++i) {
        t.set(i, f(Assignment::from_index(static_cast<std::size_t>(f.n), i)));
    }
    return t;
}

TruthTable TruthTable::from_string(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) { text.remove_prefix(1); }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) { text.remove_suffix(1); }
    if (text.empty() || !std::has_single_bit(text.size())) {
        throw std::invalid_argument("truth table length " + std::to_string(text.size()) + " is not a power of two");
    }
    int const n = std::countr_zero(text.size());
    if (n > kSubfunctionLimit) {
        throw std::invalid_argument("truth tables are limited to n <= " + std::to_string(kSubfunctionLimit));
    }
    TruthTable t(n);
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '0' && text[i] != '1') {
            throw std::invalid_argument("invalid truth table character at position " + std::to_string(i));
        }
        t.set(i, text[i] == '1');
    }
    return t;
}

std::string TruthTable::to_string() const
{
    std::string s(size(), '0');
    for (std::uint64_t i = 0; i < size(); ++i) {
        if ((*this)[i]) { s[i] = '1'; }
    }
    return s;
}

VarMask mask_of(std::vector<int> const& vars)
{
    VarMask m = 0;
    for (int v : vars) { m |= VarMask{1} << (v - 1); }
    return m;
}

std::uint64_t count_subfunctions_at_cut(TruthTable const& f, VarMask subset_a)
{
    int const n = f.arity();
    if (n > kSubfunctionLimit) {
        throw std::invalid_argument("subfunction counting is limited to n <= " + std::to_string(kSubfunctionLimit));
    }
    VarMask const all = n == 32 ? ~VarMask{0} : (VarMask{1} << n) - 1;
    VarMask const a = subset_a & all;
    VarMask const b = all & ~a;
    if (a == 0 || b == 0 || a != subset_a) {
        throw std::invalid_argument("cut must split the variables into two nonempty parts");
    }

    // Each row is the truth table of f|rho over the complement, indexed by
    // the complement submasks in increasing order.
    std::size_t const row_bits = std::size_t{1} << std::popcount(b);
    std::size_t const row_words = (row_bits + 63) / 64;
    std::vector<std::uint64_t> rows;
    rows.reserve((std::size_t{1} << std::popcount(a)) * row_words);

    VarMask rho = 0;
    do {
        std::size_t const base = rows.size();
        rows.resize(base + row_words, 0);
        std::size_t col = 0;
        VarMask beta = 0;
        do {
            if (f[rho | beta]) { rows[base + col / 64] |= std::uint64_t{1} << (col % 64); }
            ++col;
            beta = (beta - b) & b;
        } while (beta != 0);
        rho = (rho - a) & a;
    } while (rho != 0);

    std::size_t const count = rows.size() / row_words;
    if (row_words == 1) {
        std::sort(rows.begin(), rows.end());
        return static_cast<std::uint64_t>(std::unique(rows.begin(), rows.end()) - rows.begin());
    }
    std::vector<std::size_t> idx(count);
    for (std::size_t i = 0; i < count; ++i) { idx[i] = i; }
    auto row_less = [&](std::size_t x, std::size_t y) {
        return std::lexicographical_compare(rows.begin() + x * row_words, rows.begin() + (x + 1) * row_words,
                                            rows.begin() + y * row_words, rows.begin() + (y + 1) * row_words);
    };
    auto row_equal = [&](std::size_t x, std::size_t y) {
        return std::equal(rows.begin() + x * row_words, rows.begin() + (x + 1) * row_words,
                          rows.begin() + y * row_words);
    };
    std::sort(idx.begin(), idx.end(), row_less);
    return static_cast<std::uint64_t>(std::unique(idx.begin(), idx.end(), row_equal) - idx.begin());
}

namespace {

void require_cut_range(TruthTable const& f)
{
    if (f.arity() < 3) { throw std::invalid_argument("prefix cuts 1 < u < n need n >= 3"); }
    if (f.arity() > kSubfunctionLimit) {
        throw std::invalid_argument("subfunction counting is limited to n <= " + std::to_string(kSubfunctionLimit));
    }
}

} // namespace

SubfunctionProfile profile(TruthTable const& f, VariableOrder const& order)
{
    require_cut_range(f);
    if (order.size() != f.arity() || !order.is_permutation()) {
        throw std::invalid_argument("order is not a permutation of the function's variables");
    }
    SubfunctionProfile prof;
    prof.n = f.arity();
    prof.order = order;
    VarMask prefix = 0;
    for (int u = 1; u < prof.n; ++u) {
        prefix |= VarMask{1} << (order.perm[static_cast<std::size_t>(u - 1)] - 1);
        if (u < 2) { continue; }
        std::uint64_t const c = count_subfunctions_at_cut(f, prefix);
        prof.cuts.emplace_back(u, c);
        prof.max_count = std::max(prof.max_count, c);
    }
    return prof;
}

std::uint64_t n_theta(TruthTable const& f, VariableOrder const& order) { return profile(f, order).max_count; }

MinOrderResult n_min(TruthTable const& f)
{
    require_cut_range(f);
    int const n = f.arity();
    std::size_t const subsets = std::size_t{1} << n;
    VarMask const full = static_cast<VarMask>(subsets - 1);

    // best[S]: smallest achievable maximum cut count over orders that read S first.
    std::vector<std::uint64_t> best(subsets, 0);
    std::vector<std::int8_t> last(subsets, -1);
    std::vector<VarMask> by_size(subsets);
    for (std::size_t s = 0; s < subsets; ++s) { by_size[s] = static_cast<VarMask>(s); }
    std::stable_sort(by_size.begin(), by_size.end(),
                     [](VarMask x, VarMask y) { return std::popcount(x) < std::popcount(y); });

    for (VarMask s : by_size) {
        if (s == 0) { continue; }
        std::uint64_t via = ~std::uint64_t{0};
        for (int v = 0; v < n; ++v) {
            VarMask const bit = VarMask{1} << v;
            if ((s & bit) && best[s & ~bit] < via) {
                via = best[s & ~bit];
                last[s] = static_cast<std::int8_t>(v);
            }
        }
        int const size = std::popcount(s);
        std::uint64_t const here = (size >= 2 && size <= n - 1) ? count_subfunctions_at_cut(f, s) : 0;
        best[s] = std::max(via, here);
    }

    MinOrderResult result;
    result.count = best[full];
    result.order.perm.resize(static_cast<std::size_t>(n));
    VarMask s = full;
    for (int pos = n - 1; pos >= 0; --pos) {
        int const v = last[s];
        result.order.perm[static_cast<std::size_t>(pos)] = v + 1;
        s &= ~(VarMask{1} << v);
    }
    return result;
}

} // namespace kobdd

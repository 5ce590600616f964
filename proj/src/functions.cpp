#include "kobdd/functions.hpp"

#include <charconv>
#include <stdexcept>

namespace kobdd {

int ceil_log2(long long x) noexcept
{
    int c = 0;
    while ((1LL << c) < x) { ++c; }
    return c;
}

bool parity(unsigned v) noexcept { return (__builtin_popcount(v) & 1) != 0; }

// --- SAF --------------------------------------------------------------------

bool SafLayout::admissible(int k, int w, int n) noexcept
{
    if (k < 1 || w < 1 || n < 1) { return false; }
    long long const lhs = 2LL * k * w * (2LL * w + ceil_log2(k) + ceil_log2(2LL * w));
    return lhs < n;
}

SafLayout SafLayout::make(int k, int w, int n)
{
    if (!admissible(k, w, n)) {
        throw std::invalid_argument("saf parameters k=" + std::to_string(k) + ", w=" + std::to_string(w) +
                                    ", n=" + std::to_string(n) +
                                    " violate 2kw(2w + ceil(log k) + ceil(log 2w)) < n");
    }
    return make_relaxed(k, w, n);
}

SafLayout SafLayout::make_relaxed(int k, int w, int n)
{
    if (k < 1 || w < 1 || n < 1) { throw std::invalid_argument("saf parameters must be positive"); }
    SafLayout l;
    l.n = n;
    l.k = k;
    l.w = w;
    l.k_bits = ceil_log2(k);
    l.w_bits = ceil_log2(2LL * w);
    // Whole blocks only; admissibility guarantees block_len > 2w + address bits.
    l.block_len = n / l.blocks();
    l.value_bits = l.block_len - l.address_bits();
    if (l.value_bits < 1) {
        throw std::invalid_argument("saf blocks of " + std::to_string(l.block_len) + " bits cannot hold " +
                                    std::to_string(l.address_bits()) + " address bits and a value bit");
    }
    return l;
}

namespace {

int read_field(Assignment const& x, SafLayout const& layout, int p, int offset, int bits)
{
    int v = 0;
    for (int j = 0; j < bits; ++j) {
        if (x(layout.address_var(p, offset + j))) { v |= 1 << j; }
    }
    return v;
}

void require_saf_input(Assignment const& x, SafLayout const& layout)
{
    if (static_cast<int>(x.size()) != layout.n) {
        throw std::invalid_argument("saf input has " + std::to_string(x.size()) + " bits, expected " +
                                    std::to_string(layout.n));
    }
}

} // namespace

int adr_k(Assignment const& x, SafLayout const& layout, int p)
{
    return read_field(x, layout, p, 0, layout.k_bits) % layout.k;
}

int adr_w(Assignment const& x, SafLayout const& layout, int p)
{
    return read_field(x, layout, p, layout.k_bits, layout.w_bits) % (2 * layout.w);
}

int ind(Assignment const& x, SafLayout const& layout, int i, int t)
{
    for (int p = 0; p < layout.blocks(); ++p) {
        if (adr_k(x, layout, p) == t && adr_w(x, layout, p) == i) { return p; }
    }
    return -1;
}

int val(Assignment const& x, SafLayout const& layout, int i, int t)
{
    int const p = ind(x, layout, i, t);
    if (p < 0) { return -1; }
    int sum = 0;
    for (int j = 0; j < layout.value_bits; ++j) { sum += x(layout.value_var(p, j)) ? 1 : 0; }
    return sum % layout.w;
}

StepPair step_pair(Assignment const& x, SafLayout const& layout, int t)
{
    require_saf_input(x, layout);
    if (t < -1 || t >= layout.k) { throw std::out_of_range("step index outside -1..k-1"); }
    StepPair s{0, 0};
    for (int step = 0; step <= t; ++step) {
        if (s.step2 == -1) { return {-1, -1}; }
        int const v1 = val(x, layout, s.step2, step);
        s.step1 = v1 < 0 ? -1 : v1 + layout.w;
        if (s.step1 == -1) { return {-1, -1}; }
        s.step2 = val(x, layout, s.step1, step);
    }
    return s;
}

bool saf_eval(Assignment const& x, SafLayout const& layout) { return step_pair(x, layout, layout.k - 1).step2 > 0; }

// --- MXPJ -------------------------------------------------------------------

void check_mxpj_parameters(int k, int d)
{
    if (k < 1) { throw std::invalid_argument("mxpj requires k >= 1"); }
    if (d < 2 || (d & (d - 1)) != 0) {
        throw std::invalid_argument("d must be a power of two (>= 2), got " + std::to_string(d));
    }
}

MxpjInstance MxpjInstance::zero(int k, int d)
{
    check_mxpj_parameters(k, d);
    MxpjInstance inst;
    inst.k = k;
    inst.d = d;
    inst.fa.assign(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(d), 0));
    inst.fb = inst.fa;
    return inst;
}

int mxpj_var(int k, int d, int half, int i, int j, int bit)
{
    int const t = ceil_log2(d);
    return (((half * k + (i - 1)) * d + j) * t) + bit + 1;
}

Assignment encode_mxpj(MxpjInstance const& inst)
{
    check_mxpj_parameters(inst.k, inst.d);
    Assignment x(static_cast<std::size_t>(inst.n()));
    int const t = inst.bits_per_block();
    for (int half = 0; half < 2; ++half) {
        auto const& fns = half == 0 ? inst.fa : inst.fb;
        for (int i = 1; i <= inst.k; ++i) {
            for (int j = 0; j < inst.d; ++j) {
                int const v = fns[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
                for (int b = 0; b < t; ++b) { x.set(mxpj_var(inst.k, inst.d, half, i, j, b), ((v >> b) & 1) != 0); }
            }
        }
    }
    return x;
}

MxpjInstance decode_mxpj(Assignment const& x, int k, int d)
{
    MxpjInstance inst = MxpjInstance::zero(k, d);
    if (static_cast<int>(x.size()) != inst.n()) {
        throw std::invalid_argument("mxpj input has " + std::to_string(x.size()) + " bits, expected " +
                                    std::to_string(inst.n()));
    }
    int const t = inst.bits_per_block();
    for (int half = 0; half < 2; ++half) {
        auto& fns = half == 0 ? inst.fa : inst.fb;
        for (int i = 1; i <= k; ++i) {
            for (int j = 0; j < d; ++j) {
                int v = 0;
                for (int b = 0; b < t; ++b) {
                    if (x(mxpj_var(k, d, half, i, j, b))) { v |= 1 << b; }
                }
                fns[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] = v;
            }
        }
    }
    return inst;
}

int pj_vertex(MxpjInstance const& inst, int steps)
{
    int v = 0;
    for (int s = 1; s <= steps; ++s) {
        auto const& f = (s % 2 == 1) ? inst.fa.front() : inst.fb.front();
        v = f[static_cast<std::size_t>(v)];
    }
    return v;
}

bool pj_eval(MxpjInstance const& inst, int steps) { return parity(static_cast<unsigned>(pj_vertex(inst, steps))); }

int mxpj_vertex(MxpjInstance const& inst)
{
    int before = 0; // f^(j-1)
    int current = 0; // f^(j)
    for (int i = 1; i <= 2 * inst.k; ++i) {
        std::size_t const fn = static_cast<std::size_t>((i + 1) / 2 - 1);
        auto const& f = (i % 2 == 1) ? inst.fa[fn] : inst.fb[fn];
        int const next = f[static_cast<std::size_t>(current)] ^ before;
        before = current;
        current = next;
    }
    return current;
}

bool mxpj_eval(MxpjInstance const& inst) { return parity(static_cast<unsigned>(mxpj_vertex(inst))); }

bool mxpj_eval(Assignment const& x, int k, int d) { return mxpj_eval(decode_mxpj(x, k, d)); }

// --- descriptors ------------------------------------------------------------

Descriptor Descriptor::parse(std::string_view text)
{
    Descriptor desc;
    auto const colon = text.find(':');
    desc.name = std::string(text.substr(0, colon));
    if (desc.name.empty()) { throw std::invalid_argument("empty descriptor name in '" + std::string(text) + "'"); }
    if (colon == std::string_view::npos) { return desc; }
    std::string_view rest = text.substr(colon + 1);
    while (true) {
        auto const comma = rest.find(',');
        desc.args.emplace_back(rest.substr(0, comma));
        if (comma == std::string_view::npos) { break; }
        rest = rest.substr(comma + 1);
    }
    return desc;
}

int Descriptor::integer(std::size_t i) const
{
    if (i >= args.size()) {
        throw std::invalid_argument("descriptor '" + name + "' is missing argument " + std::to_string(i + 1));
    }
    std::string const& s = args[i];
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw std::invalid_argument("descriptor '" + name + "' argument '" + s + "' is not an integer");
    }
    return v;
}

FunctionOracle make_function(std::string_view descriptor)
{
    Descriptor const desc = Descriptor::parse(descriptor);
    auto expect_args = [&](std::size_t count) {
        if (desc.args.size() != count) {
            throw std::invalid_argument("descriptor '" + std::string(descriptor) + "' expects " +
                                        std::to_string(count) + " arguments");
        }
    };
    FunctionOracle f;
    f.name = std::string(descriptor);
    if (desc.name == "saf") {
        expect_args(3);
        SafLayout const layout = SafLayout::make(desc.integer(0), desc.integer(1), desc.integer(2));
        f.n = layout.n;
        f.eval = [layout](Assignment const& x) { return saf_eval(x, layout); };
    } else if (desc.name == "mxpj") {
        expect_args(2);
        int const k = desc.integer(0);
        int const d = desc.integer(1);
        check_mxpj_parameters(k, d);
        f.n = MxpjInstance::zero(k, d).n();
        f.eval = [k, d](Assignment const& x) { return mxpj_eval(x, k, d); };
    } else if (desc.name == "xor" || desc.name == "and") {
        expect_args(1);
        f.n = desc.integer(0);
        if (f.n < 1) { throw std::invalid_argument("function arity must be positive"); }
        if (desc.name == "xor") {
            f.eval = [](Assignment const& x) {
                bool acc = false;
                for (auto b : x.bits()) { acc ^= (b != 0); }
                return acc;
            };
        } else {
            f.eval = [](Assignment const& x) {
                for (auto b : x.bits()) {
                    if (!b) { return false; }
                }
                return true;
            };
        }
    } else {
        throw std::invalid_argument("unknown function '" + desc.name + "' (expected saf, mxpj, xor or and)");
    }
    return f;
}

} // namespace kobdd

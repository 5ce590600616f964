#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "kobdd/bounds.hpp"
#include "kobdd/constructions.hpp"
#include "kobdd/functions.hpp"
#include "kobdd/semantics.hpp"
#include "kobdd/serialize.hpp"
#include "kobdd/subfunctions.hpp"

namespace kobdd::cli {

namespace {

/// Raised for bad invocations and unreadable or invalid inputs (exit code 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(std::string const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) { throw UsageError("cannot read '" + path + "'"); }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Program load_program(std::string const& path)
{
    Program p;
    try {
        p = deserialize(read_file(path));
    } catch (ParseError const& e) {
        throw UsageError(path + ": " + e.what());
    }
    ValidationReport const report = validate(p);
    if (!report.ok()) { throw UsageError(path + ": invalid program\n" + report.summary()); }
    return p;
}

std::string join_order(VariableOrder const& order)
{
    std::string s;
    for (std::size_t i = 0; i < order.perm.size(); ++i) {
        if (i) { s += '-'; }
        s += std::to_string(order.perm[i]);
    }
    return s;
}

std::string fixed(double v, int digits)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

// --- build -----------------------------------------------------------------

Program build_from_descriptor(std::string const& text)
{
    Descriptor const desc = Descriptor::parse(text);
    std::size_t arity = 0;
    Program det;
    if (desc.name == "mxpj") {
        arity = 2;
        if (desc.args.size() < arity) { throw UsageError("expected mxpj:k,d[,semantics]"); }
        det = build_mxpj_id_obdd(desc.integer(0), desc.integer(1));
    } else if (desc.name == "saf") {
        arity = 3;
        if (desc.args.size() < arity) { throw UsageError("expected saf:k,w,n[,semantics]"); }
        det = build_saf_2k_obdd(desc.integer(0), desc.integer(1), desc.integer(2));
    } else {
        throw UsageError("unknown builder '" + desc.name + "' (expected mxpj or saf)");
    }
    if (desc.args.size() > arity + 1) { throw UsageError("too many builder arguments in '" + text + "'"); }
    std::string const sem = desc.args.size() == arity + 1 ? desc.args[arity] : "det";
    if (sem == "det" || sem == "deterministic") { return det; }
    if (sem == "nondet" || sem == "nondeterministic") { return compile_to_nondet(det); }
    if (sem == "prob" || sem == "probabilistic") { return compile_to_prob(det); }
    if (sem == "quantum") { return compile_to_quantum(det); }
    throw UsageError("unknown semantics '" + sem + "' (expected det, nondet, prob or quantum)");
}

// --- check-equiv -------------------------------------------------------------

struct Sweep {
    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
    std::optional<std::uint64_t> first;
};

bool agrees(Program const& p, double acceptance_value, bool reference)
{
    if (p.semantics == Semantics::deterministic || p.semantics == Semantics::nondeterministic) {
        return (acceptance_value > 0.5) == reference;
    }
    return reference ? acceptance_value >= 0.5 + p.epsilon - kProbabilitySlack
                     : acceptance_value <= 0.5 - p.epsilon + kProbabilitySlack;
}

template <class InputAt>
Sweep sweep(Program const& p, FunctionOracle const& f, std::uint64_t count, int threads, InputAt input_at)
{
    unsigned const workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, count)));
    std::vector<Sweep> partial(workers);
    auto work = [&](unsigned w) {
        std::uint64_t const lo = count * w / workers;
        std::uint64_t const hi = count * (w + 1) / workers;
        Sweep& s = partial[w];
        for (std::uint64_t i = lo; i < hi; ++i) {
            Assignment const x = input_at(i);
            ++s.checked;
            if (!agrees(p, acceptance(p, x), f(x))) {
                ++s.mismatches;
                if (!s.first) { s.first = i; }
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) { pool.emplace_back(work, w); }
        for (auto& t : pool) { t.join(); }
    }
    Sweep total;
    for (auto const& s : partial) {
        total.checked += s.checked;
        total.mismatches += s.mismatches;
        if (s.first && !total.first) { total.first = s.first; }
    }
    return total;
}

/// Samples are drawn from std::mt19937_64 seeded with `seed`; each sample
/// starts a fresh 64-bit word and takes bits least significant first.
std::vector<Assignment> draw_samples(int n, std::uint64_t count, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::vector<Assignment> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::uint64_t i = 0; i < count; ++i) {
        Assignment x(static_cast<std::size_t>(n));
        std::uint64_t word = 0;
        for (int v = 0; v < n; ++v) {
            if (v % 64 == 0) { word = gen(); }
            x.set(v + 1, ((word >> (v % 64)) & 1U) != 0);
        }
        out.push_back(std::move(x));
    }
    return out;
}

// --- subfn -------------------------------------------------------------------

TruthTable load_function(std::string const& target, std::string& name)
{
    if (std::filesystem::is_regular_file(target)) {
        name = std::filesystem::path(target).filename().string();
        try {
            return TruthTable::from_string(read_file(target));
        } catch (std::invalid_argument const& e) {
            throw UsageError(target + ": " + e.what());
        }
    }
    FunctionOracle const f = make_function(target);
    name = target;
    if (f.n > kSubfunctionLimit) {
        throw UsageError("subfunction counting is limited to n <= " + std::to_string(kSubfunctionLimit) + ", " +
                         target + " has n = " + std::to_string(f.n));
    }
    return TruthTable::from_function(f);
}

VariableOrder parse_order(std::string const& text, int n)
{
    if (text == "id") { return VariableOrder::identity(n); }
    VariableOrder order;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            order.perm.push_back(std::stoi(item));
        } catch (std::exception const&) {
            throw UsageError("order entry '" + item + "' is not an integer");
        }
    }
    if (order.size() != n || !order.is_permutation()) {
        throw UsageError("order '" + text + "' is not a permutation of 1.." + std::to_string(n));
    }
    return order;
}

// --- bounds ------------------------------------------------------------------

struct Grid {
    char const* size_name;
    std::string sizes;
    std::string ks;
};

Grid default_grid(Chain c)
{
    switch (c) {
    case Chain::hi_n: return {"w", "8..1024*2", "2..64"};
    case Chain::hi_p: return {"w", "256..1048576*2", "2..64"};
    case Chain::hi_q: return {"d", "1024..1048576*2", "2..64"};
    case Chain::s5_obdd:
    case Chain::s5_nobdd:
    case Chain::s5_pobdd: return {"d", "16..1048576*2", "2..64"};
    case Chain::h_kobdd: return {"w", "64..1024*2", "2..64"};
    }
    return {"w", "", ""};
}

} // namespace

std::vector<int> parse_int_list(std::string const& text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    auto to_int = [&](std::string const& s) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (std::exception const&) {
            used = 0;
        }
        if (used != s.size() || s.empty() || v < 0 || v > 1LL << 30) {
            throw std::invalid_argument("'" + s + "' is not a valid integer in list '" + text + "'");
        }
        return static_cast<int>(v);
    };
    while (std::getline(ss, item, ',')) {
        auto const dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_int(item));
            continue;
        }
        std::string const lo_s = item.substr(0, dots);
        std::string hi_s = item.substr(dots + 2);
        int factor = 0;
        if (auto const star = hi_s.find('*'); star != std::string::npos) {
            factor = to_int(hi_s.substr(star + 1));
            hi_s = hi_s.substr(0, star);
            if (factor < 2) { throw std::invalid_argument("geometric factor must be >= 2 in '" + item + "'"); }
        }
        long long const lo = to_int(lo_s);
        long long const hi = to_int(hi_s);
        if (lo > hi || (factor && lo == 0)) { throw std::invalid_argument("empty or invalid range '" + item + "'"); }
        for (long long v = lo; v <= hi; v = factor ? v * factor : v + 1) { out.push_back(static_cast<int>(v)); }
    }
    if (out.empty()) { throw std::invalid_argument("empty list"); }
    return out;
}

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Laboratory for ordered read-k-times branching programs", "kobdd"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 1;
    int threads = 1;
    std::string out_path;
    app.add_option("--seed", seed, "seed for sampling (std::mt19937_64)");
    app.add_option("--threads", threads, "worker threads for input sweeps")->check(CLI::PositiveNumber);
    app.add_option("-o,--out", out_path, "write the program or report to this file");

    std::string build_desc;
    auto* build = app.add_subcommand("build", "build a program: mxpj:k,d[,sem] or saf:k,w,n[,sem]");
    build->add_option("descriptor", build_desc)->required();

    std::string eval_prog;
    std::string eval_input;
    auto* eval = app.add_subcommand("eval", "evaluate a program file on a bit string or a file of bit strings");
    eval->add_option("program", eval_prog)->required();
    eval->add_option("input", eval_input)->required();

    std::string eq_prog;
    std::string eq_fn;
    std::string eq_mode = "exhaustive";
    std::uint64_t eq_samples = 100000;
    auto* equiv = app.add_subcommand("check-equiv", "compare a program with a reference function");
    equiv->add_option("program", eq_prog)->required();
    equiv->add_option("function", eq_fn, "saf:k,w,n | mxpj:k,d | xor:n | and:n")->required();
    equiv->add_option("--mode", eq_mode)->check(CLI::IsMember({"exhaustive", "sample"}));
    equiv->add_option("--samples", eq_samples);

    std::string sf_target;
    std::string sf_order = "id";
    std::string sf_cut = "all";
    auto* subfn = app.add_subcommand("subfn", "count subfunctions at prefix cuts");
    subfn->add_option("function", sf_target, "descriptor or truth-table file")->required();
    subfn->add_option("--order", sf_order, "id | min | comma-separated permutation");
    subfn->add_option("--cut", sf_cut, "all | max | u");

    std::string bd_chain;
    std::string bd_k;
    std::string bd_size;
    double c = 1.0;
    std::optional<double> c1;
    double c2 = 1.0;
    double c3 = 1.0;
    auto* bounds = app.add_subcommand("bounds", "evaluate a hierarchy inequality chain over a parameter grid");
    bounds->add_option("chain", bd_chain)->required();
    bounds->add_option("--k", bd_k, "list of k values");
    bounds->add_option("--w,--d", bd_size, "list of w (SAF chains) or d (MXPJ chains) values");
    bounds->add_option("--C", c);
    bounds->add_option("--C1", c1, "defaults to 8*C");
    bounds->add_option("--C2", c2);
    bounds->add_option("--C3", c3);

    std::string val_prog;
    auto* validate_cmd = app.add_subcommand("validate", "check the structural invariants of a program file");
    validate_cmd->add_option("program", val_prog)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    std::ofstream file;
    bool const redirect = !out_path.empty() && !build->parsed();
    if (redirect) {
        file.open(out_path);
        if (!file) {
            err << "error: cannot write '" << out_path << "'\n";
            return kUsageError;
        }
    }
    std::ostream& report = redirect ? static_cast<std::ostream&>(file) : out;

    try {
        if (build->parsed()) {
            Program const p = build_from_descriptor(build_desc);
            ValidationReport const v = validate(p);
            if (!v.ok()) { throw std::logic_error("builder produced an invalid program:\n" + v.summary()); }
            std::string const text = serialize(p);
            std::ostream* summary = &out;
            if (out_path.empty()) {
                out << text;
                summary = &err;
            } else {
                std::ofstream f(out_path);
                if (!f) { throw UsageError("cannot write '" + out_path + "'"); }
                f << text;
            }
            *summary << "semantics=" << to_string(p.semantics) << " n=" << p.n << " layers=" << p.k
                     << " levels=" << p.levels.size() << " width=" << width(p) << '\n';
            return kSuccess;
        }

        if (eval->parsed()) {
            Program const p = load_program(eval_prog);
            std::vector<std::string> inputs;
            bool const literal = !eval_input.empty() &&
                                 eval_input.find_first_not_of("01") == std::string::npos;
            if (literal) {
                inputs.push_back(eval_input);
            } else {
                std::stringstream ss(read_file(eval_input));
                for (std::string line; std::getline(ss, line);) {
                    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) { line.pop_back(); }
                    if (!line.empty()) { inputs.push_back(line); }
                }
            }
            for (auto const& text : inputs) {
                Assignment x;
                try {
                    x = Assignment::from_string(text);
                } catch (std::invalid_argument const& e) {
                    throw UsageError(e.what());
                }
                if (static_cast<int>(x.size()) != p.n) {
                    throw UsageError("input has " + std::to_string(x.size()) + " bits, program expects n = " +
                                     std::to_string(p.n));
                }
                if (p.semantics == Semantics::deterministic || p.semantics == Semantics::nondeterministic) {
                    report << (acceptance(p, x) > 0.5 ? 1 : 0) << '\n';
                } else {
                    report << fixed(accept_prob(p, x), 9) << '\n';
                }
            }
            return kSuccess;
        }

        if (equiv->parsed()) {
            Program const p = load_program(eq_prog);
            FunctionOracle const f = make_function(eq_fn);
            if (f.n != p.n) {
                throw UsageError("function " + eq_fn + " has n = " + std::to_string(f.n) + ", program has n = " +
                                 std::to_string(p.n));
            }
            Sweep result;
            std::function<Assignment(std::uint64_t)> input_of;
            std::vector<Assignment> samples;
            if (eq_mode == "exhaustive") {
                if (p.n > kExhaustiveLimit) {
                    throw UsageError("exhaustive mode is limited to n <= " + std::to_string(kExhaustiveLimit) +
                                     "; use --mode sample");
                }
                input_of = [n = p.n](std::uint64_t i) { return Assignment::from_index(static_cast<std::size_t>(n), i); };
                result = sweep(p, f, std::uint64_t{1} << p.n, threads, input_of);
            } else {
                samples = draw_samples(p.n, eq_samples, seed);
                input_of = [&samples](std::uint64_t i) { return samples[static_cast<std::size_t>(i)]; };
                result = sweep(p, f, eq_samples, threads, input_of);
            }
            report << "checked=" << result.checked << " mismatches=" << result.mismatches << '\n';
            if (result.first) {
                Assignment const x = input_of(*result.first);
                double const value = acceptance(p, x);
                report << "first_counterexample=" << x.to_string() << " program="
                       << (p.semantics == Semantics::deterministic || p.semantics == Semantics::nondeterministic
                               ? std::to_string(value > 0.5 ? 1 : 0)
                               : fixed(value, 9))
                       << " reference=" << (f(x) ? 1 : 0) << '\n';
            }
            return result.mismatches == 0 ? kSuccess : kCheckFailed;
        }

        if (subfn->parsed()) {
            std::string name;
            TruthTable const f = load_function(sf_target, name);
            if (f.arity() < 3) { throw UsageError("prefix cuts need n >= 3"); }
            VariableOrder order;
            std::optional<std::uint64_t> global;
            if (sf_order == "min") {
                MinOrderResult const best = n_min(f);
                order = best.order;
                global = best.count;
            } else {
                order = parse_order(sf_order, f.arity());
            }
            SubfunctionProfile prof = profile(f, order);
            prof.global_min = global;
            report << "function,n,order,u,count\n";
            std::string const prefix = name + "," + std::to_string(prof.n) + "," + join_order(order) + ",";
            if (sf_cut == "all") {
                for (auto [u, count] : prof.cuts) { report << prefix << u << ',' << count << '\n'; }
            } else if (sf_cut == "max") {
                report << prefix << "max," << prof.max_count << '\n';
            } else {
                int u = 0;
                try {
                    u = std::stoi(sf_cut);
                } catch (std::exception const&) {
                    throw UsageError("cut must be all, max or an integer");
                }
                auto it = std::find_if(prof.cuts.begin(), prof.cuts.end(), [u](auto const& c) { return c.first == u; });
                if (it == prof.cuts.end()) {
                    throw UsageError("cut u must satisfy 1 < u < " + std::to_string(prof.n));
                }
                report << prefix << u << ',' << it->second << '\n';
            }
            return kSuccess;
        }

        if (bounds->parsed()) {
            Chain const chain = chain_from_string(bd_chain);
            Grid const grid = default_grid(chain);
            std::vector<int> const sizes = parse_int_list(bd_size.empty() ? grid.sizes : bd_size);
            std::vector<int> const ks = parse_int_list(bd_k.empty() ? grid.ks : bd_k);
            Constants consts{c, c1.value_or(8.0 * c), c2, c3};

            report << "chain,k,size,C,C1,C2,C3,reduced_width,lhs_log2,rhs_log2,margin,final_step,"
                      "steps_consistent,constant_dependent,status\n";
            bool all_ok = true;
            for (int size : sizes) {
                for (int k : ks) {
                    report << to_string(chain) << ',' << k << ',' << size << ',' << fixed(consts.c, 6) << ','
                           << fixed(consts.c1, 6) << ',' << fixed(consts.c2, 6) << ',' << fixed(consts.c3, 6) << ',';
                    try {
                        BoundReport const r = check_chain(chain, k, size, consts);
                        bool const consistent = r.steps_consistent();
                        char const* status = r.margin > 0.0 ? (consistent ? "ok" : "inconsistent") : "nonpositive";
                        all_ok = all_ok && r.margin > 0.0 && consistent;
                        report << fixed(r.reduced_width, 6) << ',' << fixed(r.lhs_log2, 6) << ','
                               << fixed(r.rhs_log2, 6) << ',' << fixed(r.margin, 6) << ','
                               << fixed(r.final_step(), 6) << ',' << (consistent ? 1 : 0) << ','
                               << (r.constant_dependent ? 1 : 0) << ',' << status << '\n';
                    } catch (OutOfRegime const&) {
                        report << ",,,,,,,out_of_regime\n";
                    }
                }
            }
            return all_ok ? kSuccess : kCheckFailed;
        }

        if (validate_cmd->parsed()) {
            Program p;
            try {
                p = deserialize(read_file(val_prog));
            } catch (ParseError const& e) {
                throw UsageError(val_prog + ": " + e.what());
            }
            ValidationReport const v = validate(p);
            report << v.summary() << (v.ok() ? "\n" : "");
            return v.ok() ? kSuccess : kCheckFailed;
        }
    } catch (UsageError const& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (std::invalid_argument const& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

} // namespace kobdd::cli

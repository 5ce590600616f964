#include "kobdd/serialize.hpp"

#include <charconv>
#include <system_error>

#include "json.hpp"

namespace kobdd {

using nlohmann::json;

std::string format_decimal(double v)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) { throw std::runtime_error("cannot format number"); }
    return std::string(buf, end);
}

double parse_decimal(std::string_view s)
{
    double v = 0.0;
    auto const* first = s.data();
    auto const* last = s.data() + s.size();
    if (first != last && *first == '+') { ++first; }
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || s.empty()) {
        throw std::invalid_argument("'" + std::string(s) + "' is not a decimal number");
    }
    return v;
}

namespace {

json transition_to_json(Transition const& t)
{
    return std::visit(
        [](auto const& m) -> json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DeterministicMap>) {
                return m.targets;
            } else if constexpr (std::is_same_v<T, Relation>) {
                json out = json::array();
                for (auto [a, b] : m.pairs) { out.push_back({a, b}); }
                return out;
            } else if constexpr (std::is_same_v<T, StochasticMatrix>) {
                json out = json::array();
                for (int r = 0; r < m.rows; ++r) {
                    json row = json::array();
                    for (int c = 0; c < m.cols; ++c) { row.push_back(format_decimal(m(r, c))); }
                    out.push_back(std::move(row));
                }
                return out;
            } else {
                json out = json::array();
                for (int r = 0; r < m.rows; ++r) {
                    json row = json::array();
                    for (int c = 0; c < m.cols; ++c) {
                        row.push_back({{"re", format_decimal(m(r, c).real())}, {"im", format_decimal(m(r, c).imag())}});
                    }
                    out.push_back(std::move(row));
                }
                return out;
            }
        },
        t);
}

/// Cursor over the document that remembers its JSON pointer for diagnostics.
class Reader {
public:
    Reader(json const& node, std::string path) : node_(node), path_(std::move(path)) {}

    [[noreturn]] void error(std::string const& message) const
    {
        throw ParseError(path_.empty() ? std::string("/") : path_, message);
    }

    Reader field(char const* name) const
    {
        if (!node_.is_object()) { error("expected an object"); }
        auto it = node_.find(name);
        if (it == node_.end()) {
            throw ParseError(path_ + "/" + name, std::string("missing field '") + name + "'");
        }
        return Reader(*it, path_ + "/" + name);
    }

    bool has(char const* name) const { return node_.is_object() && node_.contains(name) && !node_.at(name).is_null(); }

    Reader at(std::size_t i) const { return Reader(node_.at(i), path_ + "/" + std::to_string(i)); }

    std::size_t array_size() const
    {
        if (!node_.is_array()) { error("expected an array"); }
        return node_.size();
    }

    int integer() const
    {
        if (!node_.is_number_integer()) { error("expected an integer"); }
        return node_.get<int>();
    }

    std::string string() const
    {
        if (!node_.is_string()) { error("expected a string"); }
        return node_.get<std::string>();
    }

    double decimal() const
    {
        std::string s = string();
        try {
            return parse_decimal(s);
        } catch (std::invalid_argument const& e) {
            error(e.what());
        }
    }

    std::vector<int> int_list() const
    {
        std::vector<int> out(array_size());
        for (std::size_t i = 0; i < out.size(); ++i) { out[i] = at(i).integer(); }
        return out;
    }

private:
    json const& node_;
    std::string path_;
};

template <class Entry, class ReadEntry>
DenseMatrix<Entry> read_matrix(Reader const& r, int rows, int cols, ReadEntry read_entry)
{
    if (static_cast<int>(r.array_size()) != rows) {
        r.error("dimension mismatch: expected " + std::to_string(rows) + " rows, found " +
                std::to_string(r.array_size()));
    }
    DenseMatrix<Entry> m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        Reader row = r.at(static_cast<std::size_t>(i));
        if (static_cast<int>(row.array_size()) != cols) {
            row.error("dimension mismatch: expected " + std::to_string(cols) + " columns, found " +
                      std::to_string(row.array_size()));
        }
        for (int j = 0; j < cols; ++j) { m(i, j) = read_entry(row.at(static_cast<std::size_t>(j))); }
    }
    return m;
}

Transition read_transition(Reader const& r, Semantics sem, int width_in, int width_out)
{
    switch (sem) {
    case Semantics::deterministic: {
        DeterministicMap m{r.int_list()};
        if (static_cast<int>(m.targets.size()) != width_in) {
            r.error("dimension mismatch: expected " + std::to_string(width_in) + " targets, found " +
                    std::to_string(m.targets.size()));
        }
        return m;
    }
    case Semantics::nondeterministic: {
        Relation rel;
        for (std::size_t i = 0; i < r.array_size(); ++i) {
            Reader pair = r.at(i);
            if (pair.array_size() != 2) { pair.error("expected a [from, to] pair"); }
            rel.pairs.emplace_back(pair.at(0).integer(), pair.at(1).integer());
        }
        return rel;
    }
    case Semantics::probabilistic:
        return read_matrix<double>(r, width_out, width_in, [](Reader const& e) { return e.decimal(); });
    case Semantics::quantum:
        if (width_in != width_out) { r.error("quantum levels must be square"); }
        return read_matrix<std::complex<double>>(r, width_out, width_in, [](Reader const& e) {
            return std::complex<double>(e.field("re").decimal(), e.field("im").decimal());
        });
    }
    r.error("unreachable semantics");
}

} // namespace

std::string serialize(Program const& p)
{
    json doc;
    doc["semantics"] = std::string(to_string(p.semantics));
    doc["n"] = p.n;
    doc["k"] = p.k;
    doc["order"] = p.order.perm;
    json levels = json::array();
    for (auto const& lv : p.levels) {
        levels.push_back({{"var", lv.variable},
                          {"width_in", lv.width_in},
                          {"width_out", lv.width_out},
                          {"t0", transition_to_json(lv.t0)},
                          {"t1", transition_to_json(lv.t1)}});
    }
    doc["levels"] = std::move(levels);
    doc["initial"] = p.initial;
    doc["accept"] = p.accept;
    if (p.semantics == Semantics::probabilistic || p.semantics == Semantics::quantum) {
        doc["epsilon"] = format_decimal(p.epsilon);
    }
    return doc.dump(1) + "\n";
}

Program deserialize(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (json::parse_error const& e) {
        throw ParseError("byte " + std::to_string(e.byte), "malformed JSON");
    }

    Reader root(doc, "");
    if (!doc.is_object()) { root.error("expected a JSON object"); }

    Program p;
    Reader sem = root.field("semantics");
    try {
        p.semantics = semantics_from_string(sem.string());
    } catch (std::invalid_argument const& e) {
        sem.error(e.what());
    }
    Reader const n = root.field("n");
    Reader const k = root.field("k");
    p.n = n.integer();
    p.k = k.integer();
    if (p.n < 1) { n.error("n must be positive"); }
    if (p.k < 1) { k.error("k must be positive"); }
    p.order.perm = root.field("order").int_list();

    Reader levels = root.field("levels");
    std::size_t const count = levels.array_size();
    p.levels.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Reader lv = levels.at(i);
        TransitionLevel level;
        level.variable = lv.field("var").integer();
        level.width_in = lv.field("width_in").integer();
        level.width_out = lv.field("width_out").integer();
        if (level.width_in < 1 || level.width_out < 1) { lv.error("widths must be positive"); }
        level.t0 = read_transition(lv.field("t0"), p.semantics, level.width_in, level.width_out);
        level.t1 = read_transition(lv.field("t1"), p.semantics, level.width_in, level.width_out);
        p.levels.push_back(std::move(level));
    }

    p.initial = root.field("initial").integer();
    p.accept = root.field("accept").int_list();
    if (p.semantics == Semantics::probabilistic || p.semantics == Semantics::quantum) {
        p.epsilon = root.field("epsilon").decimal();
    } else if (root.has("epsilon")) {
        p.epsilon = root.field("epsilon").decimal();
    }
    return p;
}

} // namespace kobdd

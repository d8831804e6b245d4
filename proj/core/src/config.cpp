#include "wallindex/config.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <toml.hpp>

namespace wallindex {

ConfigError::ConfigError(const std::string& origin, int line, const std::string& field,
                         const std::string& what)
    : std::runtime_error(origin + (line > 0 ? ":" + std::to_string(line) : std::string()) +
                         (field.empty() ? std::string() : ": " + field) + ": " + what),
      line_(line),
      field_(field) {}

std::vector<std::string> ExperimentConfig::selected_suites() const {
    const bool all = std::find(suites.begin(), suites.end(), "all") != suites.end();
    std::vector<std::string> out;
    for (const auto& s : known_suites()) {
        if (all || std::find(suites.begin(), suites.end(), s) != suites.end()) out.push_back(s);
    }
    return out;
}

Tolerances ExperimentConfig::scaled_tolerances() const {
    Tolerances t = tolerances;
    for (double* p : {&t.structural, &t.identity, &t.rsa, &t.cylinder, &t.spectral,
                      &t.integrality, &t.pairing, &t.imaginary}) {
        *p *= tolerance_scale;
    }
    return t;
}

namespace {

using Scalar = std::variant<std::string, long long, double, bool>;

struct Value {
    bool is_array = false;
    std::vector<Scalar> items;  // one item unless is_array
    int line = 0;
};

[[noreturn]] void fail_at(const std::string& origin, int line, const std::string& field,
                          const std::string& what) {
    throw ConfigError(origin, line, field, what);
}

class Parser {
public:
    Parser(std::string origin) : origin_(std::move(origin)) {}

    /// Dotted key -> value for every leaf of the document.
    std::map<std::string, Value> parse(std::string_view text) {
        toml::table doc;
        try {
            doc = toml::parse(text, origin_);
        } catch (const toml::parse_error& e) {
            fail(static_cast<int>(e.source().begin.line), "", std::string(e.description()));
        }
        std::map<std::string, Value> out;
        flatten(doc, "", out);
        return out;
    }

    [[noreturn]] void fail(int line, const std::string& field, const std::string& what) const {
        fail_at(origin_, line, field, what);
    }

private:
    static int line_of(const toml::node& n) { return static_cast<int>(n.source().begin.line); }

    void flatten(const toml::table& t, const std::string& prefix, std::map<std::string, Value>& out) const {
        for (const auto& [k, node] : t) {
            const std::string key = prefix + std::string(k.str());
            if (const auto* sub = node.as_table()) {
                if (!prefix.empty()) fail(line_of(node), key, "nested tables are not supported");
                flatten(*sub, key + ".", out);
                continue;
            }
            Value v;
            v.line = line_of(node);
            if (const auto* arr = node.as_array()) {
                v.is_array = true;
                for (const auto& item : *arr) v.items.push_back(scalar(item, key));
            } else {
                v.items.push_back(scalar(node, key));
            }
            out.emplace(key, std::move(v));
        }
    }

    Scalar scalar(const toml::node& n, const std::string& key) const {
        if (auto s = n.value<std::string>(); s && n.is_string()) return *s;
        if (n.is_integer()) return static_cast<long long>(*n.value<std::int64_t>());
        if (n.is_floating_point()) return *n.value<double>();
        if (n.is_boolean()) return *n.value<bool>();
        fail(line_of(n), key, "unsupported value type");
    }

    std::string origin_;
};

class Binder {
public:
    Binder(std::map<std::string, Value> values, Parser& parser)
        : values_(std::move(values)), parser_(parser) {}

    template <class T>
    void bind(const std::string& key, T& target) {
        auto it = values_.find(key);
        if (it == values_.end()) return;
        const Value& v = it->second;
        assign(v, key, target);
        used_.push_back(key);
    }

    void reject_unknown() const {
        for (const auto& [k, v] : values_) {
            if (std::find(used_.begin(), used_.end(), k) == used_.end()) {
                parser_.fail(v.line, k, "unknown key");
            }
        }
    }

private:
    const Scalar& single(const Value& v, const std::string& key) const {
        if (v.is_array || v.items.size() != 1) parser_.fail(v.line, key, "expected a single value");
        return v.items.front();
    }

    double as_double(const Scalar& s, int line, const std::string& key) const {
        if (auto p = std::get_if<double>(&s)) return *p;
        if (auto p = std::get_if<long long>(&s)) return static_cast<double>(*p);
        parser_.fail(line, key, "expected a number");
    }
    long long as_int(const Scalar& s, int line, const std::string& key) const {
        if (auto p = std::get_if<long long>(&s)) return *p;
        parser_.fail(line, key, "expected an integer");
    }

    void assign(const Value& v, const std::string& key, std::string& t) const {
        const Scalar& s = single(v, key);
        if (auto p = std::get_if<std::string>(&s)) t = *p;
        else parser_.fail(v.line, key, "expected a string");
    }
    void assign(const Value& v, const std::string& key, double& t) const {
        t = as_double(single(v, key), v.line, key);
    }
    void assign(const Value& v, const std::string& key, int& t) const {
        t = static_cast<int>(as_int(single(v, key), v.line, key));
    }
    void assign(const Value& v, const std::string& key, std::uint64_t& t) const {
        const long long x = as_int(single(v, key), v.line, key);
        if (x < 0) parser_.fail(v.line, key, "expected a non-negative integer");
        t = static_cast<std::uint64_t>(x);
    }
    void assign(const Value& v, const std::string& key, bool& t) const {
        const Scalar& s = single(v, key);
        if (auto p = std::get_if<bool>(&s)) t = *p;
        else parser_.fail(v.line, key, "expected true or false");
    }
    void assign(const Value& v, const std::string& key, std::vector<int>& t) const {
        t.clear();
        for (const auto& s : v.items) t.push_back(static_cast<int>(as_int(s, v.line, key)));
    }
    void assign(const Value& v, const std::string& key, std::vector<double>& t) const {
        t.clear();
        for (const auto& s : v.items) t.push_back(as_double(s, v.line, key));
    }
    void assign(const Value& v, const std::string& key, std::vector<std::string>& t) const {
        t.clear();
        for (const auto& s : v.items) {
            if (auto p = std::get_if<std::string>(&s)) t.push_back(*p);
            else parser_.fail(v.line, key, "expected strings");
        }
    }

    std::map<std::string, Value> values_;
    Parser& parser_;
    std::vector<std::string> used_;
};

int line_of(const std::map<std::string, Value>& m, const std::string& key) {
    auto it = m.find(key);
    return it == m.end() ? 0 : it->second.line;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, const std::string& origin) {
    Parser parser(origin);
    auto values = parser.parse(text);
    const auto lines = values;
    Binder b(std::move(values), parser);
    ExperimentConfig c;

    b.bind("name", c.name);
    b.bind("seed", c.seed);
    b.bind("suites", c.suites);
    b.bind("tolerance_scale", c.tolerance_scale);
    b.bind("output_dir", c.output_dir);
    b.bind("parallelism", c.parallelism);

    auto& m = c.manifold;
    b.bind("manifold.dimension", m.dimension);
    m.points.assign(static_cast<std::size_t>(std::max(m.dimension, 0)), 24);
    m.lengths.assign(static_cast<std::size_t>(std::max(m.dimension, 0)), kTwoPi);
    if (lines.count("manifold.points") && !lines.at("manifold.points").is_array) {
        int n = 24;
        b.bind("manifold.points", n);
        m.points.assign(m.points.size(), n);
    } else {
        b.bind("manifold.points", m.points);
    }
    if (lines.count("manifold.length")) {
        double l = kTwoPi;
        b.bind("manifold.length", l);
        m.lengths.assign(m.lengths.size(), l);
    }
    b.bind("manifold.lengths", m.lengths);
    b.bind("manifold.wall_axis", m.wall_axis);
    b.bind("manifold.wall_index", m.wall_index);
    b.bind("manifold.orientation", m.orientation);

    auto& g = c.gauge;
    g.seed = c.seed;
    b.bind("gauge.preset", g.preset);
    b.bind("gauge.rank", g.rank);
    b.bind("gauge.jump", g.jump);
    b.bind("gauge.background", g.background);
    b.bind("gauge.flux", g.flux);
    b.bind("gauge.winding", g.winding);
    b.bind("gauge.seed", g.seed);
    b.bind("gauge.amplitude", g.amplitude);
    b.bind("gauge.max_mode", g.max_mode);

    auto& f = c.frame;
    f.seed = c.seed + 1;
    b.bind("frame.preset", f.preset);
    b.bind("frame.seed", f.seed);
    b.bind("frame.amplitude", f.amplitude);
    b.bind("frame.max_mode", f.max_mode);
    b.bind("frame.jump", f.jump);

    std::string disc = to_string(c.index.discretization);
    std::string method = to_string(c.index.method);
    b.bind("index.discretization", disc);
    b.bind("index.method", method);
    b.bind("index.points", c.index.points);
    b.bind("index.threshold", c.index.threshold);
    if (disc == "spectral") c.index.discretization = Discretization::spectral;
    else if (disc == "finite-difference") c.index.discretization = Discretization::finite_difference;
    else parser.fail(line_of(lines, "index.discretization"), "index.discretization",
                     "expected \"spectral\" or \"finite-difference\"");
    if (method == "singular-values") c.index.method = EigenMethod::singular_values;
    else if (method == "hermitian") c.index.method = EigenMethod::hermitian;
    else parser.fail(line_of(lines, "index.method"), "index.method",
                     "expected \"singular-values\" or \"hermitian\"");

    b.bind("cylinder.epsilons", c.cylinder.epsilons);
    b.bind("cylinder.transverse_points", c.cylinder.transverse_points);

    auto& t = c.tolerances;
    b.bind("tolerances.structural", t.structural);
    b.bind("tolerances.identity", t.identity);
    b.bind("tolerances.rsa", t.rsa);
    b.bind("tolerances.cylinder", t.cylinder);
    b.bind("tolerances.spectral", t.spectral);
    b.bind("tolerances.integrality", t.integrality);
    b.bind("tolerances.pairing", t.pairing);
    b.bind("tolerances.imaginary", t.imaginary);

    b.reject_unknown();
    validate_config(c, origin);
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string(), 0, "", "cannot open configuration file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.string());
}

void validate_config(const ExperimentConfig& c, const std::string& origin) {
    auto fail = [&](const std::string& field, const std::string& what) {
        throw ConfigError(origin, 0, field, what);
    };
    const auto& m = c.manifold;
    if (m.dimension != 2 && m.dimension != 4) fail("manifold.dimension", "must be 2 or 4");
    if (static_cast<int>(m.points.size()) != m.dimension) {
        fail("manifold.points", "needs one entry per axis");
    }
    if (static_cast<int>(m.lengths.size()) != m.dimension) {
        fail("manifold.lengths", "needs one entry per axis");
    }
    for (int p : m.points) {
        if (p < 8 || p % 2 != 0) fail("manifold.points", "must be even and at least 8");
    }
    for (double l : m.lengths) {
        if (!(l > 0.0)) fail("manifold.lengths", "must be positive");
    }
    if (m.wall_axis < 0 || m.wall_axis >= m.dimension) fail("manifold.wall_axis", "out of range");
    if (m.wall_index < 0 || m.wall_index >= m.points[static_cast<std::size_t>(m.wall_axis)]) {
        fail("manifold.wall_index", "out of range");
    }
    if (m.orientation != 1 && m.orientation != -1) fail("manifold.orientation", "must be 1 or -1");

    const auto& g = c.gauge;
    static const std::vector<std::string> gauge_presets{"free", "constant-jump", "flux",
                                                        "pure-gauge", "random"};
    if (std::find(gauge_presets.begin(), gauge_presets.end(), g.preset) == gauge_presets.end()) {
        fail("gauge.preset", "unknown preset '" + g.preset + "'");
    }
    if (g.rank < 1 || g.rank > 4) fail("gauge.rank", "must be between 1 and 4");
    if (g.amplitude < 0.0) fail("gauge.amplitude", "must be non-negative");
    if (g.max_mode < 0 || 2 * g.max_mode >= m.points.front() / 2) {
        fail("gauge.max_mode", "must be non-negative and below a quarter of the grid points");
    }
    if (c.frame.preset != "zero" && c.frame.preset != "random") {
        fail("frame.preset", "unknown preset '" + c.frame.preset + "'");
    }
    if (c.frame.max_mode < 0 || 2 * c.frame.max_mode >= m.points.front() / 2) {
        fail("frame.max_mode", "must be non-negative and below a quarter of the grid points");
    }
    if (c.suites.empty()) fail("suites", "at least one suite is required");
    for (const auto& s : c.suites) {
        if (s != "all" && std::find(known_suites().begin(), known_suites().end(), s) == known_suites().end()) {
            fail("suites", "unknown suite '" + s + "'");
        }
    }
    if (!(c.tolerance_scale > 0.0)) fail("tolerance_scale", "must be positive");
    if (c.parallelism < 1) fail("parallelism", "must be at least 1");
    if (c.index.points.empty()) fail("index.points", "at least one grid size is required");
    for (int p : c.index.points) {
        if (p < 8 || p % 2 != 0) fail("index.points", "must be even and at least 8");
    }
    if (!(c.index.threshold > 0.0)) fail("index.threshold", "must be positive");
    if (c.cylinder.epsilons.empty()) fail("cylinder.epsilons", "at least one width is required");
    for (double e : c.cylinder.epsilons) {
        if (!(e > 0.0)) fail("cylinder.epsilons", "must be positive");
    }
    if (c.cylinder.transverse_points < 8) fail("cylinder.transverse_points", "must be at least 8");
}

}  // namespace wallindex

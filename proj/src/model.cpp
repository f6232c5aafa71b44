#include "s3v/model.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <regex>
#include <set>
#include <sstream>

namespace s3v {

using nlohmann::json;

namespace {

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

std::pair<int, int> parse_pair_key(const std::string& key) {
    static const std::regex re(R"(\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*)");
    std::smatch m;
    if (!std::regex_match(key, m, re)) throw ModelError("expected a key of the form \"(g,h)\", got \"" + key + "\"");
    return {std::stoi(m[1]), std::stoi(m[2])};
}

Rational rational_from_json(const json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
        if (j.is_string()) return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        throw ModelError(where + ": " + e.what());
    }
    throw ModelError(where + ": expected a rational \"p/q\" string or an integer");
}

SignedVar combine(SignedVar a, int sa, SignedVar b, int sb) {
    auto form = [](SignedVar v) -> std::array<int, 2> {
        std::array<int, 2> f = v.gen == 0 ? std::array<int, 2>{1, 0} : (v.gen == 1 ? std::array<int, 2>{0, 1} : std::array<int, 2>{1, -1});
        return {v.sign * f[0], v.sign * f[1]};
    };
    auto fa = form(a), fb = form(b);
    return signed_var_of(sa * fa[0] + sb * fb[0], sa * fa[1] + sb * fb[1]);
}

}  // namespace

// ---------------------------------------------------------------------------
// ClassLabel / ClassVec

std::string ClassLabel::str() const {
    return std::string(kind == ClassKind::P ? "P" : "I") + "(" + std::to_string(g[0]) + "," + std::to_string(g[1]) + "," +
           std::to_string(g[2]) + ")";
}

ClassVec class_vec(const ClassLabel& c, const Scalar& s) {
    ClassVec v;
    if (!s.is_zero()) v.emplace(c, s);
    return v;
}

ClassVec add(const ClassVec& a, const ClassVec& b) {
    ClassVec r = a;
    for (const auto& [k, s] : b) {
        auto it = r.find(k);
        if (it == r.end()) {
            r.emplace(k, s);
        } else {
            it->second += s;
            if (it->second.is_zero()) r.erase(it);
        }
    }
    return r;
}

ClassVec scale(const ClassVec& a, const Scalar& s) {
    ClassVec r;
    if (s.is_zero()) return r;
    for (const auto& [k, v] : a) r.emplace(k, v * s);
    return r;
}

bool is_zero(const ClassVec& v) {
    return std::all_of(v.begin(), v.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

bool equals(const ClassVec& a, const ClassVec& b, double tol) {
    std::set<ClassLabel> keys;
    for (const auto& kv : a) keys.insert(kv.first);
    for (const auto& kv : b) keys.insert(kv.first);
    for (const auto& k : keys) {
        auto ia = a.find(k), ib = b.find(k);
        if (ia == a.end() && ib == b.end()) continue;
        if (ia == a.end()) {
            if (!ib->second.is_zero(tol)) return false;
        } else if (ib == b.end()) {
            if (!ia->second.is_zero(tol)) return false;
        } else if (!ia->second.equals(ib->second, tol)) {
            return false;
        }
    }
    return true;
}

std::string str(const ClassVec& v) {
    if (v.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : v) s += (s.empty() ? "" : " + ") + ("(" + c.str() + ")*" + k.str());
    return s;
}

Cyclotomic scalar_from_json(const json& j) {
    if (j.is_number_integer() || j.is_string()) return Cyclotomic(rational_from_json(j, "scalar"));
    if (j.is_object()) {
        if (!j.contains("order") || !j.contains("coeffs") || !j["order"].is_number_integer() || !j["coeffs"].is_array())
            throw ModelError("cyclotomic scalar needs integer \"order\" and array \"coeffs\"");
        std::vector<Rational> c;
        for (const auto& x : j["coeffs"]) c.push_back(rational_from_json(x, "cyclotomic coefficient"));
        std::int64_t order = j["order"].get<std::int64_t>();
        if (order < 1) throw ModelError("cyclotomic order must be positive");
        return Cyclotomic::from_coeffs(order, c);
    }
    throw ModelError("scalar must be \"p/q\", an integer or {order, coeffs}");
}

json scalar_to_json(const Scalar& s) {
    if (!s.is_exact()) {
        auto z = s.approx();
        return json{{"re", z.real()}, {"im", z.imag()}};
    }
    const Cyclotomic& c = s.exact();
    if (c.is_rational()) return c.rational_value().str();
    json coeffs = json::array();
    for (const auto& q : c.coeffs()) coeffs.push_back(q.str());
    return json{{"order", c.order()}, {"coeffs", coeffs}};
}

// ---------------------------------------------------------------------------
// Construction

void Model::finish() {
    color_of_.assign(static_cast<std::size_t>(m_), -1);
    for (std::size_t c = 0; c < comps_.size(); ++c) {
        if (comps_[c].empty()) throw ModelError("color \"" + labels_[c] + "\" has no components");
        for (int g : comps_[c]) {
            if (g < 0 || g >= m_) throw ModelError("component " + std::to_string(g) + " outside Z/" + std::to_string(m_));
            if (color_of_[static_cast<std::size_t>(g)] != -1)
                throw ModelError("component " + std::to_string(g) + " belongs to two colors");
            color_of_[static_cast<std::size_t>(g)] = static_cast<int>(c);
        }
    }
    for (int g = 0; g < m_; ++g)
        if (color_of_[static_cast<std::size_t>(g)] == -1)
            throw ModelError("component " + std::to_string(g) + " is not assigned to a color");
}

Model Model::abelian(int n, Mode mode) {
    if (n < 1) throw ModelError("abelian model needs N >= 1");
    Model md;
    md.name_ = "abelian-Z" + std::to_string(n);
    md.mode_ = mode;
    md.m_ = n;
    for (int g = 0; g < n; ++g) {
        md.labels_.push_back(std::to_string(g));
        md.comps_.push_back({g});
    }
    md.weights_.resize(static_cast<std::size_t>(n));
    md.form_.resize(static_cast<std::size_t>(n * n));
    for (int g = 0; g < n; ++g) {
        md.weights_[static_cast<std::size_t>(g)] = Rational(static_cast<std::int64_t>(g) * g, n).frac();
        for (int h = 0; h < n; ++h) {
            Rational q(2 * static_cast<std::int64_t>(g) * h, n);
            md.form_[static_cast<std::size_t>(g * n + h)] = q - Rational(2) * (q / Rational(2)).floor();
        }
    }
    md.finish();
    return md;
}

Model Model::synthetic(std::uint64_t seed, Mode mode) {
    std::mt19937_64 rng(seed);
    static const int orders[] = {5, 6, 8, 10, 12};
    const int M = orders[pick(rng, 5)];
    // m = M/2 would make every exponent an integer.
    int mult = 1 + static_cast<int>(pick(rng, static_cast<std::uint64_t>(M - 1)));
    if ((2 * mult) % M == 0) mult = 1;
    Model md = abelian(M, Mode::Exact);
    md.form_multiplier_ = mult;
    for (int g = 0; g < M; ++g) {
        md.weights_[static_cast<std::size_t>(g)] = Rational(static_cast<std::int64_t>(mult) * g * g, M).frac();
        for (int h = 0; h < M; ++h) {
            Rational q(2 * static_cast<std::int64_t>(mult) * g * h, M);
            md.form_[static_cast<std::size_t>(g * M + h)] = q - Rational(2) * (q / Rational(2)).floor();
        }
    }
    static const Rational mags[] = {Rational(1), Rational(2), Rational(-1), Rational(1, 3)};
    for (int g = 1; g < M; ++g)
        for (int h = 1; h < M; ++h)
            if (pick(rng, 2) == 0) {
                Rational turn(static_cast<std::int64_t>(pick(rng, 12)), 12);
                md.constants_[{g, h}] = Cyclotomic::root_of_unity(turn) * Cyclotomic(mags[pick(rng, 4)]);
            }
    static const Rational dress[] = {Rational(0), Rational(1), Rational(-1), Rational(1, 2), Rational(2)};
    for (int g = 1; g < M; ++g)
        for (int h = g; h < M; ++h)
            if (pick(rng, 3) == 0) {
                Rational a = dress[pick(rng, 5)], b = dress[pick(rng, 5)];
                if (!a.is_zero() || !b.is_zero()) md.dressing_[{g, h}] = {a, b};
            }
    md.name_ = "synthetic-" + std::to_string(seed);
    md.mode_ = mode;
    return md;
}

Model Model::from_json(const json& j, Mode mode) {
    if (!j.is_object()) throw ModelError("model must be a JSON object");
    static const std::set<std::string> known{"name", "colors", "group_order", "components", "form_multiplier", "form",
                                             "weights", "constants", "synthetic_correlators", "perturbations"};
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) throw ModelError("unknown model key \"" + k + "\"");
    if (!j.contains("colors")) throw ModelError("model needs \"colors\"");

    Model md;
    md.mode_ = mode;
    md.name_ = j.value("name", std::string("model"));
    const json& colors = j["colors"];
    int mult = 1;
    if (j.contains("form_multiplier")) {
        if (!j["form_multiplier"].is_number_integer()) throw ModelError("\"form_multiplier\" must be an integer");
        mult = j["form_multiplier"].get<int>();
    }
    if (colors.is_number_integer()) {
        int n = colors.get<int>();
        if (n < 1 || n > 64) throw ModelError("\"colors\" must be between 1 and 64");
        if (j.contains("components") || j.contains("group_order"))
            throw ModelError("\"components\"/\"group_order\" only apply when \"colors\" is a label list");
        md.m_ = n;
        for (int g = 0; g < n; ++g) {
            md.labels_.push_back(std::to_string(g));
            md.comps_.push_back({g});
        }
    } else if (colors.is_array()) {
        if (!j.contains("group_order") || !j["group_order"].is_number_integer())
            throw ModelError("a label list of colors needs an integer \"group_order\"");
        md.m_ = j["group_order"].get<int>();
        if (md.m_ < 1 || md.m_ > 64) throw ModelError("\"group_order\" must be between 1 and 64");
        if (!j.contains("components") || !j["components"].is_object())
            throw ModelError("a label list of colors needs a \"components\" object");
        for (const auto& c : colors) {
            if (!c.is_string()) throw ModelError("color labels must be strings");
            std::string label = c.get<std::string>();
            if (!j["components"].contains(label)) throw ModelError("no components for color \"" + label + "\"");
            const json& cs = j["components"][label];
            if (!cs.is_array()) throw ModelError("components of \"" + label + "\" must be an array");
            std::vector<int> comp;
            for (const auto& g : cs) {
                if (!g.is_number_integer()) throw ModelError("components must be integers");
                comp.push_back(g.get<int>());
            }
            md.labels_.push_back(label);
            md.comps_.push_back(comp);
        }
        if (j["components"].size() != colors.size()) throw ModelError("\"components\" names a color not in \"colors\"");
    } else {
        throw ModelError("\"colors\" must be an integer or a list of labels");
    }
    md.finish();
    const int M = md.m_;
    md.form_multiplier_ = mult;
    md.weights_.resize(static_cast<std::size_t>(M));
    md.form_.resize(static_cast<std::size_t>(M * M));
    for (int g = 0; g < M; ++g) {
        md.weights_[static_cast<std::size_t>(g)] = Rational(static_cast<std::int64_t>(mult) * g * g, M).frac();
        for (int h = 0; h < M; ++h) {
            Rational q(2 * static_cast<std::int64_t>(mult) * g * h, M);
            md.form_[static_cast<std::size_t>(g * M + h)] = q - Rational(2) * (q / Rational(2)).floor();
        }
    }
    if (j.contains("weights")) {
        if (!j["weights"].is_object()) throw ModelError("\"weights\" must be an object");
        for (const auto& [label, v] : j["weights"].items()) {
            auto it = std::find(md.labels_.begin(), md.labels_.end(), label);
            if (it == md.labels_.end()) throw ModelError("weight given for unknown color \"" + label + "\"");
            Rational w = rational_from_json(v, "weight of " + label).frac();
            for (int g : md.comps_[static_cast<std::size_t>(it - md.labels_.begin())]) md.weights_[static_cast<std::size_t>(g)] = w;
        }
    }
    if (j.contains("form")) {
        if (!j["form"].is_object()) throw ModelError("\"form\" must be an object");
        for (const auto& [key, v] : j["form"].items()) {
            auto [g, h] = parse_pair_key(key);
            if (g < 0 || g >= M || h < 0 || h >= M) throw ModelError("form key " + key + " outside the group");
            Rational q = rational_from_json(v, "form " + key);
            if (q < Rational(0) || q >= Rational(2)) throw ModelError("form value " + key + " must lie in [0, 2)");
            md.form_[static_cast<std::size_t>(g * M + h)] = q;
            md.form_[static_cast<std::size_t>(h * M + g)] = q;
        }
    }
    if (j.contains("constants")) {
        if (!j["constants"].is_object()) throw ModelError("\"constants\" must be an object");
        for (const auto& [key, v] : j["constants"].items()) {
            auto [g, h] = parse_pair_key(key);
            if (g < 0 || g >= M || h < 0 || h >= M) throw ModelError("constant key " + key + " outside the group");
            Cyclotomic c = scalar_from_json(v);
            if (c.is_zero()) throw ModelError("structure constant " + key + " must be nonzero");
            md.constants_[{g, h}] = c;
        }
    }
    if (j.contains("synthetic_correlators")) {
        if (!j["synthetic_correlators"].is_array()) throw ModelError("\"synthetic_correlators\" must be an array");
        for (const auto& e : j["synthetic_correlators"]) {
            if (!e.is_object() || !e.contains("pair") || !e["pair"].is_array() || e["pair"].size() != 2)
                throw ModelError("synthetic correlator entries need \"pair\": [g, h]");
            int g = e["pair"][0].get<int>(), h = e["pair"][1].get<int>();
            if (g <= 0 || g >= M || h <= 0 || h >= M)
                throw ModelError("synthetic correlator pairs must use nonzero components");
            Rational a = e.contains("square") ? rational_from_json(e["square"], "square") : Rational(0);
            Rational b = e.contains("inverse_square") ? rational_from_json(e["inverse_square"], "inverse_square") : Rational(0);
            md.dressing_[{std::min(g, h), std::max(g, h)}] = {a, b};
        }
    }
    if (j.contains("perturbations")) {
        if (!j["perturbations"].is_array()) throw ModelError("\"perturbations\" must be an array");
        for (const auto& e : j["perturbations"]) {
            if (!e.is_object() || !e.contains("class") || !e["class"].is_array() || e["class"].size() != 3 ||
                !e.contains("factor"))
                throw ModelError("perturbations need \"class\": [g1, g2, g3] and \"factor\"");
            ClassLabel c{ClassKind::P, {e["class"][0].get<int>(), e["class"][1].get<int>(), e["class"][2].get<int>()}};
            md.perturb(c, scalar_from_json(e["factor"]));
        }
    }
    return md;
}

Model Model::load(const std::string& path, Mode mode) {
    std::ifstream in(path);
    if (!in) throw ModelError("cannot open model file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ModelError("model file " + path + " is not valid JSON: " + e.what());
    }
    return from_json(j, mode);
}

json Model::to_json() const {
    json j;
    j["name"] = name_;
    j["group_order"] = m_;
    j["colors"] = labels_;
    json comps = json::object();
    for (std::size_t c = 0; c < labels_.size(); ++c) comps[labels_[c]] = comps_[c];
    j["components"] = comps;
    j["form_multiplier"] = form_multiplier_;
    json w = json::object();
    for (int c = 0; c < num_colors(); ++c) w[labels_[static_cast<std::size_t>(c)]] = color_weight(c).str();
    j["weights"] = w;
    json f = json::object();
    for (int g = 0; g < m_; ++g)
        for (int h = g; h < m_; ++h) f["(" + std::to_string(g) + "," + std::to_string(h) + ")"] = form(g, h).str();
    j["form"] = f;
    json cs = json::object();
    for (const auto& [k, v] : constants_)
        cs["(" + std::to_string(k.first) + "," + std::to_string(k.second) + ")"] = scalar_to_json(Scalar(v));
    j["constants"] = cs;
    json sc = json::array();
    for (const auto& [k, v] : dressing_)
        sc.push_back(json{{"pair", {k.first, k.second}}, {"square", v.first.str()}, {"inverse_square", v.second.str()}});
    j["synthetic_correlators"] = sc;
    if (!perturb_.empty()) {
        json ps = json::array();
        for (const auto& [c, v] : perturb_) ps.push_back(json{{"class", c.g}, {"factor", scalar_to_json(Scalar(v))}});
        j["perturbations"] = ps;
    }
    return j;
}

Model Model::with_mode(Mode m) const {
    Model r = *this;
    r.mode_ = m;
    return r;
}

// ---------------------------------------------------------------------------
// Tables

Rational Model::form(int g, int h) const { return form_.at(static_cast<std::size_t>(mod(g) * m_ + mod(h))); }

Scalar Model::constant(int g, int h) const {
    auto it = constants_.find({mod(g), mod(h)});
    Cyclotomic c = it == constants_.end() ? Cyclotomic(1) : it->second;
    return Scalar::convert(Scalar(c), mode_);
}

Rational Model::dressing_a(int g, int h) const {
    g = mod(g);
    h = mod(h);
    auto it = dressing_.find({std::min(g, h), std::max(g, h)});
    return it == dressing_.end() ? Rational(0) : it->second.first;
}

Rational Model::dressing_b(int g, int h) const {
    g = mod(g);
    h = mod(h);
    auto it = dressing_.find({std::min(g, h), std::max(g, h)});
    return it == dressing_.end() ? Rational(0) : it->second.second;
}

void Model::perturb(const ClassLabel& p, const Scalar& factor) {
    if (p.kind != ClassKind::P) throw ModelError("only P classes can be perturbed");
    if (!factor.is_exact()) throw ModelError("perturbation factors must be exact");
    ClassLabel c{ClassKind::P, {mod(p.g[0]), mod(p.g[1]), mod(p.g[2])}};
    auto it = perturb_.find(c);
    if (it == perturb_.end())
        perturb_.emplace(c, factor.exact());
    else
        it->second *= factor.exact();
}

std::vector<Quadruple> Model::quadruples() const {
    std::set<Quadruple> s;
    for (int a = 0; a < m_; ++a)
        for (int b = 0; b < m_; ++b)
            for (int c = 0; c < m_; ++c) s.insert({color_of(a), color_of(b), color_of(c), color_of(a + b + c)});
    return {s.begin(), s.end()};
}

std::vector<ClassLabel> Model::classes(ClassKind kind, const Quadruple& q) const {
    std::vector<ClassLabel> out;
    for (int a : components(q[0]))
        for (int b : components(q[1]))
            for (int c : components(q[2]))
                if (color_of(a + b + c) == q[3]) out.push_back(ClassLabel{kind, {a, b, c}});
    return out;
}

std::vector<ClassLabel> Model::all_classes(ClassKind kind) const {
    std::vector<ClassLabel> out;
    for (int a = 0; a < m_; ++a)
        for (int b = 0; b < m_; ++b)
            for (int c = 0; c < m_; ++c) out.push_back(ClassLabel{kind, {a, b, c}});
    return out;
}

Quadruple Model::quadruple_of(const ClassLabel& c) const {
    return {color_of(c.g[0]), color_of(c.g[1]), color_of(c.g[2]), color_of(c.g[0] + c.g[1] + c.g[2])};
}

std::string Model::quadruple_str(const Quadruple& q) const {
    return "(" + color_label(q[0]) + "," + color_label(q[1]) + "," + color_label(q[2]) + "," + color_label(q[3]) + ")";
}

Exps Model::class_exponents(const ClassLabel& c) const {
    const auto& g = c.g;
    return {form(g[0], g[2]), form(g[1], g[2]), form(g[0], g[1])};
}

Scalar Model::class_constant(const ClassLabel& c) const {
    const auto& g = c.g;
    if (c.kind == ClassKind::P) {
        Scalar s = constant(g[0], g[1] + g[2]) * constant(g[1], g[2]);
        auto it = perturb_.find(ClassLabel{ClassKind::P, {mod(g[0]), mod(g[1]), mod(g[2])}});
        if (it != perturb_.end()) s *= Scalar::convert(Scalar(it->second), mode_);
        return s;
    }
    return constant(g[0], g[1]) * constant(g[0] + g[1], g[2]);
}

LaurentElem Model::dressing(const std::array<int, 3>& g) const {
    LaurentElem d = LaurentElem::constant(Scalar::one(mode_));
    // (pair, generator): d_12 = w, d_13 = u, d_23 = v
    const std::array<std::pair<std::array<int, 2>, int>, 3> pairs{{{{0, 1}, 2}, {{0, 2}, 0}, {{1, 2}, 1}}};
    for (const auto& [pr, gen] : pairs) {
        int a = g[static_cast<std::size_t>(pr[0])], b = g[static_cast<std::size_t>(pr[1])];
        if (mod(a) == 0 || mod(b) == 0) continue;
        Rational sa = dressing_a(a, b), sb = dressing_b(a, b);
        Exp3 e{0, 0, 0};
        if (!sa.is_zero()) {
            e[static_cast<std::size_t>(gen)] = 2;
            d.add_term(e, Scalar::from_rational(sa, mode_));
        }
        if (!sb.is_zero()) {
            e[static_cast<std::size_t>(gen)] = -2;
            d.add_term(e, Scalar::from_rational(sb, mode_));
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// Correlators

GFunction Model::product_correlator(const ClassLabel& c) const {
    if (c.kind != ClassKind::P) throw std::invalid_argument("product_correlator needs a P class, got " + c.str());
    GFunction f(mode_);
    f.add(class_constant(c), class_exponents(c), dressing(c.g));
    f.colors = quadruple_of(c);
    return f;
}

GFunction Model::product_correlator(const ClassVec& v) const {
    GFunction f(mode_);
    for (const auto& [c, s] : v) {
        f = f + product_correlator(c).scaled(Scalar::convert(s, mode_));
        f.colors = quadruple_of(c);
    }
    return f;
}

GFunction Model::iterate_correlator(const BranchFrame& frame, const ClassLabel& c) const {
    if (c.kind != ClassKind::I) throw std::invalid_argument("iterate_correlator needs an I class, got " + c.str());
    LocalExpansion loc = natural(class_vec(c, Scalar::one(mode_)), SignedVar{2, 1}, SignedVar{1, 1}, frame.anchor());
    GFunction f = anchor_from_local(frame, loc, Region::R3);
    f.colors = quadruple_of(c);
    return f;
}

std::vector<NaturalTerm> Model::natural_terms(const ClassLabel& c, SignedVar first, SignedVar second) const {
    const Exps e = class_exponents(c);
    NaturalTerm t;
    t.coeff = class_constant(c);
    SignedPerm perm;
    if (c.kind == ClassKind::P) {
        // x1^{q13} x2^{q23} (x1 - x2)^{q12}; dressing u' = x1, v' = x2, w' = x1 - x2.
        SignedVar combo = combine(first, 1, second, -1);
        t.big = first;
        t.small = second;
        t.combo = combo;
        t.eb = e[0];
        t.es = e[1];
        t.ec = e[2];
        perm.target = {first.gen, second.gen, combo.gen};
        perm.sign = {first.sign, second.sign, combo.sign};
    } else {
        // x0^{q12} x2^{q23} (x0 + x2)^{q13}; dressing u' = x0 + x2, v' = x2, w' = x0.
        SignedVar combo = combine(first, 1, second, 1);
        t.big = second;
        t.small = first;
        t.combo = combo;
        t.eb = e[1];
        t.es = e[2];
        t.ec = e[0];
        perm.target = {combo.gen, second.gen, first.gen};
        perm.sign = {combo.sign, second.sign, first.sign};
    }
    t.dressing = dressing(c.g).substitute(perm);
    return {t};
}

LocalExpansion Model::natural(const ClassVec& v, SignedVar first, SignedVar second, const Point& p) const {
    std::vector<NaturalTerm> all;
    for (const auto& [c, s] : v) {
        for (auto t : natural_terms(c, first, second)) {
            t.coeff = t.coeff * Scalar::convert(s, mode_);
            all.push_back(std::move(t));
        }
    }
    return natural_expansion(all, p, mode_);
}

OmegaImage Model::omega_apply(int r, const OpLabel& op) const {
    // Two-point function of Op(g, h) is C(g,h) x^{q(g,h)}; substituting
    // e^{(2r+1) pi i} x multiplies it by e^{(2r+1) pi i q}.
    GFunction two_point = GFunction::monomial(constant(op.g, op.h), {Rational(0), Rational(0), form(op.g, op.h)}, mode_);
    const Rational q = two_point.terms().front().mono.exps[2];
    Scalar s = Scalar::root_of_unity(Rational(2 * r + 1) * q / Rational(2), mode_) * constant(op.g, op.h) /
               constant(op.h, op.g);
    return OmegaImage{OpLabel{mod(op.h), mod(op.g)}, s};
}

ClassVec Model::omega_apply(int r, const ClassVec& v, int slot) const {
    ClassVec out;
    for (const auto& [c, s] : v) {
        const auto& g = c.g;
        if (c.kind == ClassKind::P && slot == 2) {
            auto im = omega_apply(r, OpLabel{g[1], g[2]});
            out = add(out, class_vec(ClassLabel{ClassKind::P, {g[0], im.op.g, im.op.h}}, s * im.scalar));
        } else if (c.kind == ClassKind::I && slot == 1) {
            auto im = omega_apply(r, OpLabel{g[0], g[1]});
            out = add(out, class_vec(ClassLabel{ClassKind::I, {im.op.g, im.op.h, g[2]}}, s * im.scalar));
        } else {
            throw std::invalid_argument("omega acts on slot 2 of P classes or slot 1 of I classes");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<CheckResult> validate_spec(const Model& m) {
    std::vector<CheckResult> out;
    const int M = m.order();

    CheckResult ident = CheckResult::pass("identity_axiom", "identity color fuses trivially");
    for (int e : m.components(m.identity_color())) {
        for (int h = 0; h < M && ident.passed; ++h) {
            if (m.color_of(e + h) != m.color_of(h)) {
                ident = CheckResult::fail("identity_axiom", "V^{a2}_{e a1} is nonzero for a1 != a2");
                ident.with("component", std::to_string(e))
                    .with("a1", m.color_label(m.color_of(h)))
                    .with("a2", m.color_label(m.color_of(e + h)));
            }
        }
    }
    out.push_back(ident);

    CheckResult wc = CheckResult::pass("color_weights", "components of each color share a weight mod 1");
    for (int c = 0; c < m.num_colors() && wc.passed; ++c)
        for (int g : m.components(c))
            if (!(m.component_weight(g) == m.color_weight(c))) {
                wc = CheckResult::fail("color_weights", "components of one color carry different weights");
                wc.with("color", m.color_label(c)).with("component", std::to_string(g));
                break;
            }
    out.push_back(wc);

    CheckResult sym = CheckResult::pass("form_symmetric", "q(g,h) = q(h,g) and q(0,h) = 0");
    for (int g = 0; g < M && sym.passed; ++g)
        for (int h = 0; h < M; ++h) {
            if (!(m.form(g, h) == m.form(h, g)) || !m.form(0, h).is_zero()) {
                sym = CheckResult::fail("form_symmetric", "form is not symmetric or not zero on the identity");
                sym.with("pair", "(" + std::to_string(g) + "," + std::to_string(h) + ")");
                break;
            }
        }
    out.push_back(sym);

    CheckResult wcond = CheckResult::pass("weight_condition", "q(g,h) = h(g+h) - h(g) - h(h) mod 1 for every operator");
    for (int g = 0; g < M && wcond.passed; ++g)
        for (int h = 0; h < M; ++h) {
            Rational d = m.form(g, h) - (m.component_weight(g + h) - m.component_weight(g) - m.component_weight(h));
            if (!d.is_integer()) {
                wcond = CheckResult::fail("weight_condition", "operator exponent is incompatible with the weights");
                wcond.with("operator", "Op(" + std::to_string(g) + "," + std::to_string(h) + ")");
                break;
            }
        }
    out.push_back(wcond);

    CheckResult dist = CheckResult::pass("exponent_classes_distinct", "exponent classes are distinct in every quadruple");
    for (const auto& q : m.quadruples()) {
        std::map<Exps, ClassLabel> seen;
        for (const auto& c : m.classes(ClassKind::P, q)) {
            Exps f = frac_exps(m.class_exponents(c));
            auto it = seen.find(f);
            if (it != seen.end()) {
                dist = CheckResult::fail("exponent_classes_distinct", "two classes share an exponent class");
                dist.with("quadruple", m.quadruple_str(q)).with("class", c.str()).with("other", it->second.str());
                break;
            }
            seen.emplace(f, c);
        }
        if (!dist.passed) break;
    }
    out.push_back(dist);
    return out;
}

CheckResult kernel_rank_check(const Model& m, const BranchFrame& frame, const Quadruple& q, std::int64_t cutoff) {
    auto cls = m.classes(ClassKind::P, q);
    std::vector<Series> rows;
    std::map<ExponentVector, std::size_t> columns;
    for (const auto& c : cls) {
        rows.push_back(iota_g(frame, Iota::I12, m.product_correlator(c), cutoff));
        for (const auto& [e, v] : rows.back().terms()) columns.emplace(e, columns.size());
    }
    std::vector<std::vector<Scalar>> a(rows.size(), std::vector<Scalar>(columns.size(), Scalar::zero(m.mode())));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [e, v] : rows[i].terms()) a[i][columns.at(e)] = v;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < columns.size() && rank < a.size(); ++col) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][col].is_zero()) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[rank]);
        Scalar inv = a[rank][col].inv();
        for (std::size_t r = rank + 1; r < a.size(); ++r) {
            if (a[r][col].is_zero()) continue;
            Scalar f = a[r][col] * inv;
            for (std::size_t k = col; k < columns.size(); ++k) a[r][k] -= f * a[rank][k];
        }
        ++rank;
    }
    if (rank == cls.size())
        return CheckResult::pass("kernel_trivial", "rank " + std::to_string(rank) + " at cutoff " + std::to_string(cutoff));
    CheckResult r = CheckResult::fail("kernel_trivial", "product expansions are linearly dependent (rank " +
                                                            std::to_string(rank) + " of " + std::to_string(cls.size()) + ")");
    r.with("quadruple", m.quadruple_str(q));
    return r;
}

}  // namespace s3v

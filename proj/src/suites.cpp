#include "s3v/suites.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>

#include "s3v/branch_relations.hpp"
#include "s3v/formal.hpp"
#include "s3v/jacobi.hpp"
#include "s3v/model.hpp"
#include "s3v/moore_seiberg.hpp"
#include "s3v/paths.hpp"

namespace s3v {

namespace {

const std::vector<std::string> kModelSuites = {"branches", "moore-seiberg", "jacobi", "s3"};

bool needs_model(const std::string& s) {
    return std::find(kModelSuites.begin(), kModelSuites.end(), s) != kModelSuites.end();
}

nlohmann::json locator_json(const CheckResult& r) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : r.locator) j[k] = v;
    return j;
}

class Recorder {
public:
    Recorder(Report& rep, bool timings) : rep_(rep), timings_(timings) {}

    // Runs `fn`, which returns a vector of results, and records them under
    // `suite`, each carrying the elapsed time of the whole call.
    template <class Fn>
    void step(const std::string& suite, Fn&& fn) {
        auto t0 = std::chrono::steady_clock::now();
        std::vector<CheckResult> rs = fn();
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (auto& r : rs) add(suite, std::move(r), dt);
    }

    void add(const std::string& suite, CheckResult r, double dt, nlohmann::json extra = nullptr) {
        rep_.checks.push_back({suite, std::move(r), timings_ ? std::optional<double>(dt) : std::nullopt,
                               std::move(extra)});
    }

private:
    Report& rep_;
    bool timings_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void run_formal(const RunConfig& cfg, Recorder& rec) {
    std::mt19937_64 rng(cfg.seed);
    for (int i = 0; i < 20; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        RationalFn f = random_rational_fn(rng, 4, 3, cfg.mode);
        CheckResult r = verify_rational_delta(f, cfg.cutoff);
        r.name = "rational_delta_" + std::to_string(i);
        rec.add("formal", std::move(r), seconds_since(t0));
    }
    rec.step("formal", [&] {
        return std::vector<CheckResult>{verify_delta_identity_two_term(cfg.cutoff + 2, cfg.mode),
                                        verify_delta_identity_three_term(cfg.cutoff + 2, cfg.mode)};
    });
}

void run_paths(const RunConfig& cfg, const PathParams& pp, Recorder& rec) {
    for (bool gamma : {true, false}) {
        auto t0 = std::chrono::steady_clock::now();
        PathSpec path = gamma ? build_gamma(pp) : build_sigma(pp);
        Region ambient = gamma ? Region::GPrime : Region::GDoublePrime;
        CertificationReport cr = certify_path(path, ambient);
        std::vector<CheckResult> rs;
        CheckResult joints = cr.joints_ok ? CheckResult::pass(path.name + "_joints", "segments join exactly and the path closes")
                                          : CheckResult::fail(path.name + "_joints", "joint defect: " +
                                                                                        (cr.joint_defects.empty() ? std::string("?") : cr.joint_defects.front()));
        rs.push_back(joints);
        std::string inside_msg = path.name + " stays inside " + region_name(ambient) + ", certified clearance >= " +
                                 std::to_string(cr.certified_lower_bound);
        CheckResult inside = cr.inside ? CheckResult::pass(path.name + "_inside", inside_msg)
                                       : CheckResult::fail(path.name + "_inside", cr.failure);
        if (!cr.inside) inside.with("path", path.name).with("t", std::to_string(cr.worst_t));
        rs.push_back(inside);
        for (const auto& c : cr.containments) {
            std::string name = path.name + "_containment_" + c.label;
            if (c.passed) {
                rs.push_back(CheckResult::pass(name, c.condition));
            } else {
                CheckResult f = CheckResult::fail(name, c.condition + " violated");
                f.with("path", path.name).with("interval", c.label).with("t", std::to_string(c.worst_t));
                rs.push_back(f);
            }
        }
        ContinuationReport cont = continue_along(path);
        const auto& w = cont.winding.w;
        std::string wstr = "(" + std::to_string(w[0]) + "," + std::to_string(w[1]) + "," + std::to_string(w[2]) + ")";
        if (w == std::array<int, 3>{0, 0, 0}) {
            rs.push_back(CheckResult::pass(path.name + "_winding", "winding triple " + wstr));
        } else {
            CheckResult f = CheckResult::fail(path.name + "_winding", "winding triple " + wstr);
            f.with("path", path.name).with("winding", wstr);
            rs.push_back(f);
        }
        if (cfg.dump_paths_dir) {
            std::filesystem::create_directories(*cfg.dump_paths_dir);
            std::ofstream os(std::filesystem::path(*cfg.dump_paths_dir) / (path.name + ".csv"));
            write_path_csv(path, os);
        }
        double dt = seconds_since(t0);
        for (auto& r : rs) rec.add("paths", std::move(r), dt);
    }
}

void run_jacobi(const JacobiContext& ctx, std::int64_t cutoff, double tol, Recorder& rec) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<CheckResult> failures;
    std::size_t n = 0;
    for (const auto& z : ctx.model.all_classes(ClassKind::P)) {
        ++n;
        try {
            CheckResult r = jacobi_check(extract_FGH(ctx, z, cutoff), tol);
            if (!r.passed) {
                r.name = "jacobi " + z.str();
                r.with("class", z.str()).with("quadruple", ctx.model.quadruple_str(ctx.model.quadruple_of(z)));
                failures.push_back(r);
            }
        } catch (const JacobiError& e) {
            CheckResult r = CheckResult::fail("jacobi " + z.str(), e.what());
            r.with("class", z.str()).with("quadruple", e.quadruple()).with("stage", "extraction");
            failures.push_back(r);
        }
    }
    double dt = seconds_since(t0);
    if (failures.empty())
        rec.add("jacobi", CheckResult::pass("jacobi_base", "Jacobi identity holds for all " + std::to_string(n) +
                                                               " product classes at cutoff " + std::to_string(cutoff)),
                dt);
    for (auto& f : failures) rec.add("jacobi", std::move(f), dt);
}

void run_s3(const JacobiContext& ctx, std::int64_t cutoff, Recorder& rec) {
    auto t0 = std::chrono::steady_clock::now();
    S3Report rep = verify_s3_all(ctx, cutoff);
    double dt = seconds_since(t0);
    if (rep.refused) {
        CheckResult r = CheckResult::fail("s3_precondition", rep.refusal);
        r.with("stage", "precondition");
        rec.add("s3", std::move(r), dt);
        return;
    }
    // One check per product class, with its eight entries attached.
    std::map<std::string, std::vector<const S3Entry*>> by_class;
    std::vector<std::string> order;
    for (const auto& e : rep.entries) {
        if (!by_class.count(e.class_label)) order.push_back(e.class_label);
        by_class[e.class_label].push_back(&e);
    }
    auto passes = rep.passes_per_class();
    for (const auto& c : order) {
        const auto& es = by_class[c];
        nlohmann::json perms = nlohmann::json::array();
        const S3Entry* first_bad = nullptr;
        for (const auto* e : es) {
            perms.push_back(e->to_json());
            if (!e->passed && !first_bad) first_bad = e;
        }
        const std::string name = "s3 " + c;
        const std::string msg = std::to_string(passes[c]) + "/6 orderings pass jacobi_check";
        CheckResult r = first_bad ? CheckResult::fail(name, msg + "; " + first_bad->permutation + ": " + first_bad->detail)
                                  : CheckResult::pass(name, msg + ", both involutions pass");
        if (first_bad) {
            r.with("quadruple", first_bad->quadruple).with("class", c).with("permutation", first_bad->permutation);
            for (const auto& kv : first_bad->locator) r.locator.push_back(kv);
        }
        rec.add("s3", std::move(r), dt, nlohmann::json{{"quadruple", es.front()->quadruple}, {"permutations", perms}});
    }
}

}  // namespace

const std::vector<std::string>& suite_order() {
    static const std::vector<std::string> order = {"formal", "branches", "paths", "moore-seiberg", "jacobi", "s3"};
    return order;
}

std::vector<std::string> resolve_suites(const RunConfig& cfg) {
    if (cfg.cutoff < 1) throw ConfigError("cutoff must be at least 1");
    if (cfg.mode == Mode::Float && !(cfg.tolerance > 0)) throw ConfigError("tolerance must be positive in float mode");
    std::vector<std::string> requested = cfg.suites;
    if (requested.empty()) {
        requested = cfg.model_path ? suite_order() : std::vector<std::string>{"formal", "paths"};
    }
    for (const auto& s : requested) {
        if (std::find(suite_order().begin(), suite_order().end(), s) == suite_order().end())
            throw ConfigError("unknown suite '" + s + "'");
        if (needs_model(s) && !cfg.model_path) throw ConfigError("suite '" + s + "' needs --model");
    }
    std::vector<std::string> out;
    for (const auto& s : suite_order())
        if (std::find(requested.begin(), requested.end(), s) != requested.end()) out.push_back(s);
    return out;
}

bool Report::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.result.passed; });
}

nlohmann::json Report::to_json() const {
    nlohmann::json checks_j = nlohmann::json::array();
    std::size_t passed = 0;
    std::map<std::string, std::pair<std::size_t, std::size_t>> per_suite;
    for (const auto& c : checks) {
        nlohmann::json detail = {{"message", c.result.message}, {"locator", locator_json(c.result)}};
        if (!c.extra.is_null()) detail["data"] = c.extra;
        checks_j.push_back({{"suite", c.suite},
                            {"name", c.result.name},
                            {"status", c.result.passed ? "pass" : "fail"},
                            {"duration", c.duration ? nlohmann::json(*c.duration) : nlohmann::json(nullptr)},
                            {"detail", detail}});
        passed += c.result.passed ? 1 : 0;
        auto& ps = per_suite[c.suite];
        (c.result.passed ? ps.first : ps.second) += 1;
    }
    nlohmann::json suites_j = nlohmann::json::object();
    for (const auto& [s, pf] : per_suite) suites_j[s] = {{"passed", pf.first}, {"failed", pf.second}};
    return {{"tool", kToolName},
            {"version", kToolVersion},
            {"config", config},
            {"checks", checks_j},
            {"summary",
             {{"total", checks.size()},
              {"passed", passed},
              {"failed", checks.size() - passed},
              {"status", passed == checks.size() ? "pass" : "fail"},
              {"suites", suites_j}}}};
}

nlohmann::json config_echo(const RunConfig& cfg, const std::vector<std::string>& suites) {
    PathParams pp = cfg.path_params_text ? PathParams::parse(*cfg.path_params_text) : PathParams::defaults();
    nlohmann::json params = nlohmann::json::array();
    for (const auto& v : pp.values()) params.push_back(v.str());
    return {{"model", cfg.model_path ? nlohmann::json(*cfg.model_path) : nlohmann::json(nullptr)},
            {"suites", suites},
            {"cutoff", cfg.cutoff},
            {"mode", cfg.mode == Mode::Exact ? "exact" : "float"},
            {"tolerance", cfg.tolerance},
            {"seed", cfg.seed},
            {"path_params", params},
            {"timings", cfg.timings}};
}

Report run(const RunConfig& cfg) {
    std::vector<std::string> suites = resolve_suites(cfg);
    PathParams pp;
    try {
        pp = cfg.path_params_text ? PathParams::parse(*cfg.path_params_text) : PathParams::defaults();
        pp.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("path parameters: ") + e.what());
    }

    std::optional<Model> model;
    if (cfg.model_path) {
        if (!std::filesystem::exists(*cfg.model_path)) throw ConfigError("model file not found: " + *cfg.model_path);
        try {
            model = Model::load(*cfg.model_path, cfg.mode);
        } catch (const ModelError& e) {
            throw ConfigError(std::string("model: ") + e.what());
        }
    }

    Report rep;
    rep.config = config_echo(cfg, suites);
    Recorder rec(rep, cfg.timings);

    BranchFrame frame(pp);
    std::optional<MooreSeibergSystem> sys;
    bool system_ok = true;
    auto need_system = [&]() -> bool {
        if (sys || !system_ok) return system_ok;
        try {
            sys = MooreSeibergSystem::build(*model, frame);
        } catch (const FusingError& e) {
            system_ok = false;
            CheckResult r = CheckResult::fail("fusing_matrix", e.what());
            r.with("quadruple", e.quadruple()).with("stage", "construction");
            rec.add("moore-seiberg", std::move(r), 0.0);
        }
        return system_ok;
    };

    if (model) rec.step("model", [&] { return validate_spec(*model); });

    for (const auto& s : suites) {
        if (s == "formal") {
            run_formal(cfg, rec);
        } else if (s == "paths") {
            run_paths(cfg, pp, rec);
        } else if (s == "branches") {
            if (!need_system()) continue;
            BranchSamples samples = sample_branch_points(cfg.seed, 10);
            rec.step("branches", [&] { return check_chain_offsets(frame, samples); });
            rec.step("branches", [&] { return check_branch_relations(*model, frame, *sys, samples, cfg.tolerance); });
        } else if (s == "moore-seiberg") {
            if (!need_system()) continue;
            rec.step("moore-seiberg", [&] { return check_omega_involution(*model); });
            rec.step("moore-seiberg", [&] { return check_relations(*model, *sys); });
            rec.step("moore-seiberg", [&] { return check_braiding_monodromy(*model, frame, *sys); });
        } else if (s == "jacobi") {
            if (!need_system()) continue;
            run_jacobi(JacobiContext{*model, frame, *sys}, cfg.cutoff, cfg.tolerance, rec);
        } else if (s == "s3") {
            if (!need_system()) continue;
            run_s3(JacobiContext{*model, frame, *sys}, cfg.cutoff, rec);
        }
    }
    return rep;
}

}  // namespace s3v

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "htheta/jobio.hpp"

using namespace htheta;
using nlohmann::json;

namespace {

int exit_code_for(const Error& e) {
    switch (e.category()) {
        case ErrorCategory::input: return 1;
        case ErrorCategory::hypothesis: return 2;
        case ErrorCategory::conformance: return 3;
        case ErrorCategory::internal: return 2;
    }
    return 1;
}

void emit(const json& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw InvalidParameter("cannot open output file " + out_path);
        out << text;
    }
    std::cout << text;
}

CoefficientField parse_field_flag(const std::string& s) {
    if (s == "rational") return CoefficientField::rationals();
    if (s.rfind("prime:", 0) == 0)
        return CoefficientField::prime_field(std::stoull(s.substr(6)));
    throw InvalidParameter("--field must be rational or prime:p");
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

struct CommonFlags {
    int max_steps = 0;
    int assume_stable_at = -1;
    std::string out_path;

    ThetaOptions options() const {
        ThetaOptions o;
        o.max_steps = max_steps;
        if (assume_stable_at >= 0) o.assume_stable_at = assume_stable_at;
        return o;
    }
};

int cmd_theta(const std::string& job_path, const CommonFlags& flags) {
    Job job = load_job(job_path);
    ThetaOptions opts = job.options;
    if (flags.max_steps > 0) opts.max_steps = flags.max_steps;
    if (flags.assume_stable_at >= 0) opts.assume_stable_at = flags.assume_stable_at;

    json pairs = json::array();
    for (const auto& [mname, nname] : job.pairs) {
        const JobModule& M = find_module(job, mname);
        const JobModule& N = find_module(job, nname);
        ThetaReport rep = theta(M.module, N.module, opts);
        json entry = theta_report_to_json(rep);
        entry["M"] = mname;
        entry["N"] = nname;
        pairs.push_back(std::move(entry));
    }
    json out{{"f", job.ring->f().to_string()},
             {"variables", job.ring->ambient()->var_names()},
             {"field", field_to_json(job.ring->ambient()->field())},
             {"pairs", pairs}};
    emit(out, flags.out_path);
    return 0;
}

int cmd_sing(const std::string& expr, const std::string& vars_flag,
             const std::string& field_flag, const std::string& out_path) {
    auto vars = split_csv(vars_flag);
    if (vars.empty()) throw InvalidParameter("--vars needs a comma-separated variable list");
    RingPtr Q = PolyRing::make(parse_field_flag(field_flag), vars);
    Polynomial f = parse_poly(expr, Q);
    SingularityReport rep = jacobian_check(f);
    emit(singularity_to_json(rep, vanishing_predicted(rep)), out_path);
    return 0;
}

int cmd_mf_verify(const std::string& job_path, bool deep, const CommonFlags& flags) {
    Job job = load_job(job_path);
    json mods = json::array();
    for (const auto& m : job.modules) {
        if (!m.mf) continue;
        json entry{{"name", m.name}, {"size", m.mf->size()}, {"valid", true}};
        if (deep) {
            StarScaffoldReport star = star_scaffold(m.mf->a(), *m.mf);
            MirrorReport mirror = mirror_double_ses(*m.mf);
            entry["deep"] = json{{"star_scaffold", star.identity_holds},
                                 {"mirror_rows_exact", mirror.all_exact()},
                                 {"spots_checked", mirror.spots_checked}};
        }
        mods.push_back(std::move(entry));
    }
    emit(json{{"f", job.ring->f().to_string()}, {"factorizations", mods}}, flags.out_path);
    return 0;
}

int cmd_resolve(const std::string& job_path, const std::string& module_name,
                const CommonFlags& flags) {
    Job job = load_job(job_path);
    const JobModule& m = find_module(job, module_name);
    int steps = flags.max_steps > 0 ? flags.max_steps
                                    : (job.options.max_steps > 0
                                           ? job.options.max_steps
                                           : default_max_steps(*job.ring));
    RResolution res = resolve(m.module, steps);
    json diffs = json::array();
    for (const auto& d : res.computed_differentials()) diffs.push_back(matrix_to_json(d));
    json stab;
    if (res.stabilization()) {
        stab = json{{"index", res.stabilization()->index},
                    {"A", matrix_to_json(res.stabilization()->a)},
                    {"B", matrix_to_json(res.stabilization()->b)}};
    }
    emit(json{{"module", module_name}, {"differentials", diffs}, {"stabilization", stab}},
         flags.out_path);
    return 0;
}

int cmd_experiment(const std::vector<std::string>& families, int n_min, int n_max,
                   const std::string& field_flag, const std::string& config_path,
                   int audits, unsigned seed, const CommonFlags& flags) {
    SweepConfig config;
    config.options = flags.options();
    CoefficientField field = parse_field_flag(field_flag);
    for (const auto& fname : families) {
        if (fname == "node") {
            config.families.push_back(node_family_spec(field));
            continue;
        }
        auto name = family_name_from_string(fname);
        if (!name || *name == FamilyName::custom)
            throw InvalidParameter("unknown family '" + fname + "'");
        if (*name == FamilyName::quadric_3fold) {
            FamilySpec spec;
            spec.name = *name;
            spec.field = field;
            config.families.push_back(spec);
            continue;
        }
        for (int n = n_min; n <= n_max; ++n) {
            FamilySpec spec;
            spec.name = *name;
            spec.n = n;
            spec.field = field;
            config.families.push_back(spec);
        }
    }
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw InvalidParameter("cannot open config " + config_path);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw InvalidParameter(std::string("malformed JSON: ") + e.what());
        }
        for (const auto& fj : j.at("families")) {
            FamilySpec spec;
            spec.field = fj.contains("field") ? field_from_json(fj.at("field")) : field;
            spec.name = FamilyName::custom;
            CustomFamilyData data;
            data.label = fj.value("label", "custom");
            data.variables = fj.at("variables").get<std::vector<std::string>>();
            data.f = fj.at("f").get<std::string>();
            for (const auto& mfj : fj.at("mfs"))
                data.mfs.emplace_back(
                    mfj.at("A").get<std::vector<std::vector<std::string>>>(),
                    mfj.at("B").get<std::vector<std::vector<std::string>>>());
            spec.custom = std::move(data);
            config.families.push_back(std::move(spec));
        }
    }

    SweepResult result = run_sweep(config);

    // Optional seeded random bi-additivity and symmetry audits on the
    // requested families' module rosters.
    json audit_report;
    if (audits > 0) {
        std::mt19937_64 rng(seed);
        int bi_pass = 0, sym_pass = 0;
        for (int a = 0; a < audits; ++a) {
            const FamilySpec& spec = config.families[rng() % config.families.size()];
            Family fam = build_family(spec);
            if (fam.modules.empty()) continue;
            auto pick = [&]() { return fam.modules[rng() % fam.modules.size()]; };
            RModulePresentation m1 = pick(), m2 = pick(), n = pick();
            BiadditivityResult bi = biadditivity_audit(m1, m2, n, config.options);
            if (bi.pass) ++bi_pass;
            long long t1 = theta(m1, n, config.options).value;
            long long t2 = theta(n, m1, config.options).value;
            if (t1 == t2) ++sym_pass;
        }
        audit_report = json{{"requested", audits},
                            {"biadditivity_pass", bi_pass},
                            {"symmetry_pass", sym_pass}};
    }

    std::string csv = sweep_csv(result.records);
    if (!flags.out_path.empty()) {
        std::ofstream out(flags.out_path);
        if (!out) throw InvalidParameter("cannot open output file " + flags.out_path);
        out << csv;
        json summary{{"records", result.records.size()},
                     {"determinism_hash", result.determinism_hash},
                     {"output", flags.out_path}};
        if (!audit_report.is_null()) summary["audits"] = audit_report;
        std::cout << summary.dump(2) << "\n";
    } else {
        std::cout << csv;
        std::cerr << "determinism_hash: " << result.determinism_hash << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact theta invariants of isolated hypersurface singularities via "
                 "matrix factorizations and two-periodic resolutions"};
    app.require_subcommand(1);

    CommonFlags flags;
    unsigned seed = 20240915;

    std::string job_path, expr, vars_flag, module_name, config_path;
    std::string field_flag = "rational";
    bool deep = false;
    std::vector<std::string> families;
    int n_min = 1, n_max = 1, audits = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--max-steps", flags.max_steps, "resolution step bound");
        cmd->add_option("--assume-stable-at", flags.assume_stable_at,
                        "index-window fallback start");
        cmd->add_option("-o,--output", flags.out_path, "output path");
    };

    CLI::App* theta_cmd = app.add_subcommand("theta", "theta of the job file's pairs");
    theta_cmd->add_option("job", job_path, "job JSON path")->required();
    add_common(theta_cmd);

    CLI::App* sing_cmd = app.add_subcommand("sing", "Jacobian singularity diagnostics");
    sing_cmd->add_option("f", expr, "polynomial")->required();
    sing_cmd->add_option("--vars", vars_flag, "comma-separated variables")->required();
    sing_cmd->add_option("--field", field_flag, "rational | prime:p");
    sing_cmd->add_option("-o,--output", flags.out_path, "output path");

    CLI::App* mf_cmd = app.add_subcommand("mf-verify", "validate matrix factorizations");
    mf_cmd->add_option("job", job_path, "job JSON path")->required();
    mf_cmd->add_flag("--deep", deep, "also run the conjugation and exactness checks");
    add_common(mf_cmd);

    CLI::App* res_cmd = app.add_subcommand("resolve", "resolution with stabilization");
    res_cmd->add_option("job", job_path, "job JSON path")->required();
    res_cmd->add_option("--module", module_name, "module name")->required();
    add_common(res_cmd);

    CLI::App* exp_cmd = app.add_subcommand("experiment", "family sweeps to CSV");
    exp_cmd->add_option("--families", families, "bundled family names")
        ->delimiter(',');
    exp_cmd->add_option("--n-min", n_min, "smallest n");
    exp_cmd->add_option("--n-max", n_max, "largest n");
    exp_cmd->add_option("--field", field_flag, "rational | prime:p");
    exp_cmd->add_option("--config", config_path, "custom family JSON");
    exp_cmd->add_option("--audit", audits, "number of seeded random audits");
    exp_cmd->add_option("--seed", seed, "seed for randomized audits");
    add_common(exp_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (theta_cmd->parsed()) return cmd_theta(job_path, flags);
        if (sing_cmd->parsed()) return cmd_sing(expr, vars_flag, field_flag, flags.out_path);
        if (mf_cmd->parsed()) return cmd_mf_verify(job_path, deep, flags);
        if (res_cmd->parsed()) return cmd_resolve(job_path, module_name, flags);
        if (exp_cmd->parsed())
            return cmd_experiment(families, n_min, n_max, field_flag, config_path, audits,
                                  seed, flags);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

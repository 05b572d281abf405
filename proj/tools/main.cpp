// cantor-rings: construct, certify, and render rational maps whose Julia sets
// are Cantor sets of circles.  JSON in, JSON out; exit code 0 on success or a
// Certified verdict, 2 on Failed, 3 on Inconclusive, 1 on usage errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cantor/certify.hpp"
#include "cantor/dynamics.hpp"
#include "cantor/errors.hpp"
#include "cantor/json_io.hpp"
#include "cantor/parabolic.hpp"
#include "cantor/params.hpp"
#include "cantor/render.hpp"
#include "cantor/util.hpp"

namespace {

using namespace cantor;

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::Certified: return 0;
        case Verdict::Failed: return 2;
        default: return 3;
    }
}

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw DomainError("cannot open output file " + out_path);
    f << j.dump(2) << "\n";
}

std::string slurp(std::istream& in) {
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Spec or preset resolution shared by most subcommands.
struct SpecSource {
    std::string spec_path;
    std::string preset_name;

    void attach(CLI::App* cmd) {
        cmd->add_option("--spec", spec_path, "spec JSON file ('-' for stdin)");
        cmd->add_option("--preset", preset_name, "named preset (fig1, fig1-mcmullen, fig4, fig5)");
        cmd->add_option("spec_positional", positional_, "spec JSON file ('-' for stdin)");
    }

    Preset resolve() const {
        if (!preset_name.empty()) return preset(preset_name);
        std::string path = !spec_path.empty() ? spec_path : positional_;
        if (path.empty()) throw DomainError("need --spec, --preset, or a positional spec path");
        std::string text;
        if (path == "-") {
            text = slurp(std::cin);
        } else {
            std::ifstream f(path);
            if (!f) throw DomainError("cannot open spec file " + path);
            text = slurp(f);
        }
        Json j;
        try {
            j = Json::parse(text);
        } catch (const std::exception& e) {
            throw DomainError(std::string("spec JSON parse error: ") + e.what());
        }
        return {"file", spec_from_json(j)};
    }

    FamilySpec resolve_family() const {
        Preset p = resolve();
        if (auto* spec = std::get_if<FamilySpec>(&p.value)) return *spec;
        throw DomainError("this subcommand needs a hyperbolic family spec, not a parabolic preset");
    }

  private:
    std::string positional_;
};

std::complex<double> parse_complex(const std::string& s) {
    double re = 0.0, im = 0.0;
    char comma = 0;
    std::istringstream is(s);
    is >> re;
    if (is >> comma && comma == ',') is >> im;
    return {re, im};
}

FamilySpec validated(const FamilySpec& spec) {
    auto bad = validate(spec);
    if (!bad.empty()) {
        std::ostringstream os;
        os << "invalid spec:";
        for (const auto& b : bad) os << "\n  - " << b;
        throw DomainError(os.str());
    }
    return spec;
}

int run(int argc, char** argv) {
    CLI::App app{"Cantor-circle rational map toolkit"};
    app.require_subcommand(1);
    int threads = 0;
    unsigned long seed = 0;
    app.add_option("--threads", threads, "worker thread count (default: CANTOR_RINGS_THREADS or hardware)");
    app.add_option("--seed", seed, "seed for randomized sampling (all current checks are deterministic)");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "synthesize certified parameters for given degrees");
    int synth_p = 1;
    std::vector<int> synth_degrees;
    double shrink = 1.0;
    int uniform_n = 0;
    double uniform_s = 0.1;
    bool with_budget = false;
    std::string synth_out;
    synth_cmd->add_option("-p,--p", synth_p, "0 or 1");
    synth_cmd->add_option("-d,--degrees", synth_degrees, "degrees d_1,..,d_n")->delimiter(',');
    synth_cmd->add_option("--shrink", shrink, "move strictly inside the scale bound, in (0,1]");
    synth_cmd->add_option("--uniform", uniform_n, "equal-degree variant: n (uses --s)");
    synth_cmd->add_option("--s", uniform_s, "scale for --uniform, in (0, 1/10]");
    synth_cmd->add_flag("--with-budget", with_budget, "wrap output as {spec, budget}");
    synth_cmd->add_option("-o,--out", synth_out, "output path (default stdout)");

    // audit
    auto* audit_cmd = app.add_subcommand("audit", "audit the scale-budget inequalities of a spec");
    SpecSource audit_src;
    audit_src.attach(audit_cmd);
    std::string audit_out;
    audit_cmd->add_option("-o,--out", audit_out, "output path");

    // critical
    auto* crit_cmd = app.add_subcommand("critical", "predict and refine the free critical points");
    SpecSource crit_src;
    crit_src.attach(crit_cmd);
    std::string crit_out;
    crit_cmd->add_option("-o,--out", crit_out, "output path");

    // certify
    auto* cert_cmd = app.add_subcommand("certify", "verify the Cantor-circle criterion");
    SpecSource cert_src;
    cert_src.attach(cert_cmd);
    std::string traps_mode = "auto";
    double opt_s = 0.0, opt_outer = 0.0;
    std::size_t samples = kDefaultSamples;
    std::string cert_out;
    cert_cmd->add_option("--traps", traps_mode, "budget|empirical|auto");
    cert_cmd->add_option("--s", opt_s, "empirical inner trap radius override");
    cert_cmd->add_option("--outer", opt_outer, "empirical outer trap radius override");
    cert_cmd->add_option("--samples", samples, "samples per circle (default 4096)");
    cert_cmd->add_option("-o,--out", cert_out, "output path");

    // itinerary
    auto* itin_cmd = app.add_subcommand("itinerary", "symbol sequence of an orbit");
    SpecSource itin_src;
    itin_src.attach(itin_cmd);
    std::string z_text = "0.0,0.0";
    int length = 16;
    std::string itin_out;
    itin_cmd->add_option("--z", z_text, "starting point re,im");
    itin_cmd->add_option("--length", length, "symbols requested");
    itin_cmd->add_option("-o,--out", itin_out, "output path");

    // locate
    auto* loc_cmd = app.add_subcommand("locate", "bracket a Julia component by itinerary prefix");
    SpecSource loc_src;
    loc_src.attach(loc_cmd);
    std::string prefix_text;
    double angle = 0.0;
    std::string loc_out;
    loc_cmd->add_option("--prefix", prefix_text, "symbol prefix, e.g. 010")->required();
    loc_cmd->add_option("--angle", angle, "ray angle in radians");
    loc_cmd->add_option("-o,--out", loc_out, "output path");

    // parabolic
    auto* para_cmd = app.add_subcommand("parabolic", "the multiplier-one families");
    para_cmd->require_subcommand(1);
    auto* pl_cmd = para_cmd->add_subcommand("plambda", "perturbed parabolic polynomial family");
    int pl_m = 3, pl_n = 2;
    std::string pl_lambda = "1e-10,0";
    bool pl_certify = false, pl_critical = false, pl_fixed = false;
    std::string pl_out;
    pl_cmd->add_option("--m", pl_m, "outer local degree m >= 2");
    pl_cmd->add_option("--n", pl_n, "inner local degree n >= 2");
    pl_cmd->add_option("--lambda", pl_lambda, "perturbation parameter re,im");
    pl_cmd->add_flag("--certify", pl_certify, "run the full certification");
    pl_cmd->add_flag("--critical", pl_critical, "critical point localization only");
    pl_cmd->add_flag("--fixed-check", pl_fixed, "parabolic fixed point residuals only");
    pl_cmd->add_option("-o,--out", pl_out, "output path");

    auto* pn_cmd = para_cmd->add_subcommand("pn", "normalized alternating-product family");
    int pn_n = 3;
    double pn_s = 0.0;
    bool pn_certify = false, pn_critical = false, pn_fixed = false;
    std::string pn_out;
    pn_cmd->add_option("--n", pn_n, "symbol count n >= 2");
    pn_cmd->add_option("--s", pn_s, "scale (default 1/(25 n^2))");
    pn_cmd->add_flag("--certify", pn_certify, "run the full certification");
    pn_cmd->add_flag("--critical", pn_critical, "critical point localization only");
    pn_cmd->add_flag("--fixed-check", pn_fixed, "parabolic fixed point residuals only");
    pn_cmd->add_option("-o,--out", pn_out, "output path");

    // render
    auto* render_cmd = app.add_subcommand("render", "raster image of basins / itinerary bands");
    SpecSource render_src;
    render_src.attach(render_cmd);
    std::string center_text = "0,0";
    double half_width = 0.0;
    int px = 512;
    std::string mode_text = "basin";
    int depth = 3;
    int max_iter = 1000;
    std::string render_out = "out.ppm";
    render_cmd->add_option("--center", center_text, "viewport center re,im");
    render_cmd->add_option("--halfwidth", half_width, "horizontal half extent (default: fit the traps)");
    render_cmd->add_option("--px", px, "image width and height");
    render_cmd->add_option("--mode", mode_text, "escape|basin|itinerary");
    render_cmd->add_option("--depth", depth, "itinerary prefix depth <= 6");
    render_cmd->add_option("--max-iter", max_iter, "iteration budget per pixel");
    render_cmd->add_option("--out", render_out, "output PPM path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage error contract
    }
    if (threads > 0) set_thread_count(threads);
    (void)seed;  // sampling is deterministic; accepted for reproducible pipelines

    if (synth_cmd->parsed()) {
        FamilySpec spec;
        Json out;
        if (uniform_n > 0) {
            spec = synth_uniform(uniform_n, uniform_s);
            out = spec_to_json(spec);
            if (with_budget) out = Json{{"spec", spec_to_json(spec)}};
        } else {
            if (synth_degrees.empty()) throw DomainError("synth: need -d d_1,..,d_n or --uniform n");
            SynthResult res = synth(synth_p, synth_degrees, shrink);
            spec = res.spec;
            out = with_budget
                      ? Json{{"spec", spec_to_json(spec)}, {"budget", budget_to_json(res.budget)}}
                      : spec_to_json(spec);
        }
        emit(out, synth_out);
        return 0;
    }

    if (audit_cmd->parsed()) {
        FamilySpec spec = validated(audit_src.resolve_family());
        ParamBudget budget = budget_fit(spec);
        AuditReport rep = audit_budget(spec, budget);
        emit(Json{{"budget", budget_to_json(budget)}, {"audit", audit_to_json(rep)},
                  {"all_pass", rep.all_pass()}},
             audit_out);
        return rep.all_pass() ? 0 : 2;
    }

    if (crit_cmd->parsed()) {
        FamilySpec spec = validated(crit_src.resolve_family());
        ParamBudget budget = budget_fit(spec);
        auto clusters = refined_critical(spec, budget);
        emit(clusters_to_json(clusters), crit_out);
        return 0;
    }

    if (cert_cmd->parsed()) {
        Preset p = cert_src.resolve();
        CertificationReport rep;
        if (auto* pl = std::get_if<PLambdaSpec>(&p.value)) {
            rep = certify_parabolic(*pl, samples);
        } else if (auto* pn = std::get_if<PnSpec>(&p.value)) {
            rep = certify_parabolic(*pn, samples);
        } else {
            FamilySpec spec = validated(std::get<FamilySpec>(p.value));
            CertifyOptions opts;
            opts.samples = samples;
            if (traps_mode == "budget") opts.mode = TrapMode::Budget;
            else if (traps_mode == "empirical") opts.mode = TrapMode::Empirical;
            else if (traps_mode != "auto") throw DomainError("--traps must be budget|empirical|auto");
            if (opt_s > 0.0) opts.inner_override = opt_s;
            if (opt_outer > 0.0) opts.outer_override = opt_outer;
            rep = certify(spec, opts);
        }
        emit(report_to_json(rep), cert_out);
        return verdict_exit(rep.verdict);
    }

    if (itin_cmd->parsed()) {
        Preset p = itin_src.resolve();
        std::complex<double> z = parse_complex(z_text);
        Json out;
        if (auto* pl = std::get_if<PLambdaSpec>(&p.value)) {
            auto res = itinerary(plambda_map(*pl), region_map(*pl), z, length);
            out = Json{{"symbols", res.symbols}, {"escaped", res.escaped}, {"escaped_at", res.escaped_at}};
        } else if (auto* pn = std::get_if<PnSpec>(&p.value)) {
            auto res = itinerary(pn_map(*pn), region_map(*pn), z, length);
            out = Json{{"symbols", res.symbols}, {"escaped", res.escaped}, {"escaped_at", res.escaped_at}};
        } else {
            FamilySpec spec = validated(std::get<FamilySpec>(p.value));
            CertificationReport rep = certify(spec);
            if (!rep.certified()) {
                emit(report_to_json(rep), itin_out);
                return verdict_exit(rep.verdict);
            }
            auto res = itinerary(spec, rep, z, length);
            out = Json{{"symbols", res.symbols}, {"escaped", res.escaped}, {"escaped_at", res.escaped_at},
                       {"classify", orbit_to_json(classify(spec, rep, z))}};
        }
        emit(out, itin_out);
        return 0;
    }

    if (loc_cmd->parsed()) {
        Preset p = loc_src.resolve();
        std::vector<int> prefix;
        for (char c : prefix_text) {
            if (c < '0' || c > '9') throw DomainError("locate: prefix must be digits");
            prefix.push_back(c - '0');
        }
        RadiusInterval iv;
        if (auto* pl = std::get_if<PLambdaSpec>(&p.value)) {
            iv = locate_component(plambda_map(*pl), region_map(*pl), prefix, angle);
        } else if (auto* pn = std::get_if<PnSpec>(&p.value)) {
            iv = locate_component(pn_map(*pn), region_map(*pn), prefix, angle);
        } else {
            FamilySpec spec = validated(std::get<FamilySpec>(p.value));
            CertificationReport rep = certify(spec);
            if (!rep.certified()) {
                emit(report_to_json(rep), loc_out);
                return verdict_exit(rep.verdict);
            }
            iv = locate_component(spec, rep, prefix, angle);
        }
        emit(Json{{"prefix", prefix_text}, {"angle", angle}, {"r_lo", iv.lo}, {"r_hi", iv.hi}}, loc_out);
        return 0;
    }

    if (pl_cmd->parsed()) {
        PLambdaSpec spec;
        spec.m = pl_m;
        spec.n = pl_n;
        spec.lambda = parse_complex(pl_lambda);
        Json out;
        int code = 0;
        if (pl_fixed && !pl_certify && !pl_critical) {
            auto res = parabolic_fixed_check(plambda_map(spec), {0.0, 0.0});
            out = Json{{"fixed_point", Json{0.0, 0.0}},
                       {"value_residual", res.value_residual},
                       {"multiplier_residual", res.deriv_residual}};
        } else if (pl_critical && !pl_certify) {
            out = clusters_to_json(parabolic_critical(spec));
        } else {
            CertificationReport rep = certify_parabolic(spec, samples);
            out = report_to_json(rep);
            code = verdict_exit(rep.verdict);
        }
        emit(out, pl_out);
        return code;
    }

    if (pn_cmd->parsed()) {
        if (pn_s <= 0.0) pn_s = 1.0 / (25.0 * pn_n * pn_n);
        PnSpec spec = make_pn(pn_n, pn_s);
        Json out;
        int code = 0;
        if (pn_fixed && !pn_certify && !pn_critical) {
            auto res = parabolic_fixed_check(pn_map(spec), {1.0, 0.0});
            out = Json{{"fixed_point", Json{1.0, 0.0}},
                       {"value_residual", res.value_residual},
                       {"multiplier_residual", res.deriv_residual},
                       {"A", Json{spec.A.real(), spec.A.imag()}},
                       {"B", Json{spec.B.real(), spec.B.imag()}},
                       {"C", Json{spec.C.real(), spec.C.imag()}}};
        } else if (pn_critical && !pn_certify) {
            out = clusters_to_json(parabolic_critical(spec));
        } else {
            CertificationReport rep = certify_parabolic(spec, samples);
            out = report_to_json(rep);
            code = verdict_exit(rep.verdict);
        }
        emit(out, pn_out);
        return code;
    }

    if (render_cmd->parsed()) {
        Preset p = render_src.resolve();
        RenderJob job;
        job.center = parse_complex(center_text);
        job.width = job.height = px;
        job.depth = depth;
        job.max_iter = max_iter;
        if (mode_text == "escape") job.mode = RenderMode::Escape;
        else if (mode_text == "basin") job.mode = RenderMode::Basin;
        else if (mode_text == "itinerary") job.mode = RenderMode::Itinerary;
        else throw DomainError("--mode must be escape|basin|itinerary");

        if (auto* pl = std::get_if<PLambdaSpec>(&p.value)) {
            job.f = plambda_map(*pl);
            job.region = region_map(*pl);
            job.half_width = half_width > 0.0 ? half_width : 1.2 * job.region.outer_radius;
        } else if (auto* pn = std::get_if<PnSpec>(&p.value)) {
            job.f = pn_map(*pn);
            job.region = region_map(*pn);
            job.half_width = half_width > 0.0 ? half_width : 1.6;
        } else {
            FamilySpec spec = validated(std::get<FamilySpec>(p.value));
            CertificationReport rep = certify(spec);
            if (!rep.certified()) {
                std::cerr << "render: spec did not certify; rendering with the attempted traps\n";
            }
            job.f = family_map(spec);
            job.region = region_map(rep);
            job.half_width = half_width > 0.0 ? half_width : 1.1 * rep.traps.outer_radius;
        }
        Image img = render(job);
        std::ofstream f(render_out, std::ios::binary);
        if (!f) throw DomainError("cannot open output file " + render_out);
        write_ppm(img, f);
        std::cout << "wrote " << render_out << " (" << img.width << "x" << img.height << ")\n";
        return 0;
    }

    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cantor::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

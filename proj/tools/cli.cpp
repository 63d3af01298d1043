#include "cli.hpp"

#include "qdskit/birkhoff/solution.hpp"
#include "qdskit/core/error.hpp"
#include "qdskit/f2/f2.hpp"
#include "qdskit/gamma/gamma_structure.hpp"
#include "qdskit/qds/wps_systems.hpp"
#include "qdskit/rescaling/rescaling.hpp"
#include "qdskit/wps/weight_data.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <tuple>

namespace qdskit::cli {

namespace {

using json::Json;

// A document plus the verdict that decides the exit code.
struct Outcome {
    Json doc;
    bool verified = true;
};

bool all_weights_one(const std::vector<long>& w) {
    return std::all_of(w.begin(), w.end(), [](long x) { return x == 1; });
}

Outcome spectrum(const CommandConfig& cfg) { return {wps::encode_weight_data(wps::build_weight_data(cfg.weights))}; }

qds::PolySystem wps_system(const CommandConfig& cfg, const std::string& fallback) {
    const auto basis = qds::parse_basis(cfg.basis.empty() ? fallback : cfg.basis);
    return qds::build_wps_system(wps::build_weight_data(cfg.weights), basis);
}

Outcome system(const CommandConfig& cfg) { return {qds::encode_system(wps_system(cfg, "omega"))}; }

Outcome correlator_table(const CommandConfig& cfg) {
    const auto fs = birkhoff::solve_h(wps_system(cfg, "rescaled-flat"), cfg.max_degree);
    Json doc = birkhoff::encode_correlators(birkhoff::correlators(fs));
    doc["weights"] = cfg.weights;
    return {doc};
}

Outcome jfunction(const CommandConfig& cfg) {
    const auto fs = birkhoff::solve_h(wps_system(cfg, "rescaled-flat"), cfg.x_order);
    Json doc = birkhoff::encode_jfunction(birkhoff::j_function(fs, 0));
    doc["weights"] = cfg.weights;
    return {doc};
}

Outcome gamma_structure(const CommandConfig& cfg) {
    const auto gs = gamma::build_gamma_structure(wps::build_weight_data(cfg.weights));
    Report rep = gamma::check_gamma_structure(gs, cfg.tolerance);
    if (all_weights_one(cfg.weights)) rep.append(gamma::check_projective_span(gs, cfg.tolerance));
    Json doc = gamma::encode_gamma_structure(gs);
    doc["tolerance"] = cfg.tolerance;
    doc["report"] = json::encode(rep);
    return {doc, rep.all_pass()};
}

Outcome f2_matrices(const CommandConfig& cfg) {
    const auto basis = f2::parse_f2_basis(cfg.basis.empty() ? "can" : cfg.basis);
    if (basis == f2::F2Basis::CanR) {
        Json doc = qds::encode_system(f2::build_f2_flat_chart());
        doc["basis"] = f2::f2_basis_name(basis);
        return {doc};
    }
    return {f2::encode_connection(f2::build_f2(basis, Rational::parse(cfg.p24)))};
}

Outcome f2_check(const CommandConfig&) {
    const auto r = f2::f2_full_check();
    return {f2::encode_f2_report(r), r.report.all_pass()};
}

Outcome rescale(const CommandConfig& cfg) {
    // The leading weight 1 may be left implicit: "2,5" means (1, 2, 5).
    std::vector<long> w = cfg.weights;
    if (w.empty() || w.front() != 1) w.insert(w.begin(), 1);
    const auto wd = wps::build_weight_data(w);
    const auto data = rescaling::build_rescaling_data(wd);
    Report rep = rescaling::check_deligne(data.deligne, data.a0);
    const auto flat = qds::build_wps_system(wd, qds::WpsBasis::RescaledFlat);
    rep.append(rescaling::check_classical_limit(flat), "classical limit: ");
    rep.add("flat system at the origin gives psi_x A0", rescaling::flat_limit_matches(flat, data));
    Json doc = rescaling::encode_rescaling(data);
    doc["report"] = json::encode(rep);
    return {doc, rep.all_pass()};
}

Outcome qds_check(const CommandConfig& cfg) {
    std::ifstream in(cfg.input);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + cfg.input + "'");
    Json src;
    try {
        src = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    const auto sys = qds::decode_system(src);
    Report rep = qds::check_integrability(sys);
    rep.append(qds::check_pairing(sys));
    Json doc;
    doc["schema"] = "qds-kit/1";
    doc["kind"] = "QDSystemReport";
    doc["label"] = sys.label;
    doc["report"] = json::encode(rep);
    return {doc, rep.all_pass()};
}

// Table rendering: report lines, correlator rows, or indented JSON otherwise.
void render_table(const Json& doc, std::ostream& os) {
    const Json* checks = nullptr;
    if (doc.contains("checks")) checks = &doc["checks"];
    else if (doc.contains("report")) checks = &doc["report"]["checks"];
    if (checks) {
        for (const auto& c : *checks) {
            bool pass = c.contains("pass") ? c["pass"].get<bool>() : c["verdict"] == "pass";
            os << (pass ? "pass  " : "FAIL  ") << c["name"].get<std::string>();
            if (c.contains("detail")) os << "  (" << c["detail"].get<std::string>() << ")";
            os << "\n";
        }
        return;
    }
    if (doc.value("kind", "") == "CorrelatorTable") {
        os << "d\tr\ta\tj\tvalue\n";
        for (const auto& e : doc["entries"])
            os << e["d"].dump() << "\t" << e["r"] << "\t" << e["a"] << "\t" << e["j"] << "\t"
               << e["value"].get<std::string>() << "\n";
        return;
    }
    os << doc.dump(2) << "\n";
}

bool usage_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError:
        case ErrorCode::EmptyWeights:
        case ErrorCode::FirstWeightNotOne:
        case ErrorCode::RingMismatch:
        case ErrorCode::UnknownVariable:
            return true;
        default:
            return false;
    }
}

}  // namespace

double default_tolerance() {
    const char* env = std::getenv("QDSKIT_TOLERANCE");
    if (!env || !*env) return 1e-9;
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0))
        throw Error(ErrorCode::ParseError, std::string("QDSKIT_TOLERANCE is not a positive number: ") + env);
    return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CommandConfig cfg;
    std::string weights, format = "json";

    CLI::App app{"Quantum differential systems of weighted projective spaces and F2"};
    app.name("qdskit");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("-o,--output", cfg.output, "write the document to a file");
    app.add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));

    auto weights_opt = [&](CLI::App* c) { c->add_option("--weights", weights, "weights, e.g. 1,2,5")->required(); };
    auto tolerance_opt = [&](CLI::App* c) {
        c->add_option("--tolerance", cfg.tolerance, "numeric tolerance")->check(CLI::PositiveNumber);
    };

    auto* spectrum_app = app.add_subcommand("spectrum", "weight data and spectrum at infinity");
    weights_opt(spectrum_app);

    auto* wps = app.add_subcommand("wps", "weighted projective space mirrors");
    wps->require_subcommand(1)->fallthrough();
    auto* wsys = wps->add_subcommand("system", "connection matrices");
    weights_opt(wsys);
    wsys->add_option("--basis", cfg.basis, "omega or rescaled-flat");
    auto* wcor = wps->add_subcommand("correlators", "two-point correlators");
    weights_opt(wcor);
    wcor->add_option("--max-degree", cfg.max_degree, "largest degree")->check(CLI::NonNegativeNumber);
    wcor->add_option("--basis", cfg.basis, "omega or rescaled-flat");
    auto* wj = wps->add_subcommand("jfunction", "J-function");
    weights_opt(wj);
    wj->add_option("--x-order", cfg.x_order, "x-order of truncation")->check(CLI::NonNegativeNumber);
    wj->add_option("--basis", cfg.basis, "omega or rescaled-flat");
    auto* wg = wps->add_subcommand("gamma", "rational structure from Gamma values");
    weights_opt(wg);
    tolerance_opt(wg);

    auto* f2c = app.add_subcommand("f2", "Hirzebruch surface F2");
    f2c->require_subcommand(1)->fallthrough();
    auto* fm = f2c->add_subcommand("matrices", "connection matrices in one basis");
    fm->add_option("--basis", cfg.basis, "triangle, omega, flat, can or can-r");
    fm->add_option("--p24", cfg.p24, "free parameter of the flat basis");
    auto* fc = f2c->add_subcommand("check", "full verification report");

    auto* resc = app.add_subcommand("rescale", "rescaling and classical limit");
    weights_opt(resc);

    auto* qds = app.add_subcommand("qds", "generic quantum differential systems");
    qds->require_subcommand(1)->fallthrough();
    auto* qc = qds->add_subcommand("check", "integrability and pairing of a system file");
    qc->add_option("file", cfg.input, "QDSystem JSON")->required();

    try {
        cfg.tolerance = default_tolerance();
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "qdskit: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "qdskit: " << e.what() << "\n";
        return kExitUsage;
    }
    cfg.format = format == "table" ? OutputFormat::Table : OutputFormat::Json;

    try {
        if (!weights.empty()) cfg.weights = wps::parse_weights(weights);
        using Handler = Outcome (*)(const CommandConfig&);
        const std::vector<std::tuple<CLI::App*, const char*, Handler>> handlers{
            {spectrum_app, "spectrum", spectrum},          {wsys, "wps system", system},
            {wcor, "wps correlators", correlator_table}, {wj, "wps jfunction", jfunction},
            {wg, "wps gamma", gamma_structure},    {fm, "f2 matrices", f2_matrices},
            {fc, "f2 check", f2_check},            {resc, "rescale", rescale},
            {qc, "qds check", qds_check}};
        Outcome res;
        for (const auto& [sub, name, handler] : handlers)
            if (sub->parsed()) {
                cfg.subcommand = name;
                res = handler(cfg);
            }
        std::ostringstream text;
        if (cfg.format == OutputFormat::Json) text << res.doc.dump(2) << "\n";
        else render_table(res.doc, text);
        if (cfg.output.empty()) {
            out << text.str();
        } else {
            std::ofstream f(cfg.output);
            if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + cfg.output + "'");
            f << text.str();
        }
        return res.verified ? kExitOk : kExitVerificationFailed;
    } catch (const Error& e) {
        err << "qdskit: " << e.what() << "\n";
        return usage_code(e.code()) ? kExitUsage : kExitVerificationFailed;
    }
}

}  // namespace qdskit::cli

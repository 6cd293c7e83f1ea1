#include "sz/pipeline.hpp"
#include "sz/serre.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

void write_out(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << content;
}

sz::ExactForm build_form(const std::string& text, int level, const sz::RunConfig& cfg,
                         int iterate) {
    sz::ExactForm f = sz::parse_form_spec(text, level, cfg.truncation);
    if (iterate > 0) f = sz::serre_iterate(f, iterate);
    return f;
}

std::string series_json(const sz::ExactForm& f, const std::string& domain, unsigned bits) {
    if (domain == "float") return sz::to_json_string(sz::to_float(f.series, bits));
    return sz::to_json_string(f.series);
}

std::vector<int> parse_levels(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    if (out.empty()) throw CLI::ValidationError("--levels", "no levels given");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"serre-zeros: Serre derivatives of modular forms for Fricke groups, "
                 "zero location on the fundamental-domain boundary arcs, valence audits, "
                 "and exact level-1 certificates"};
    app.require_subcommand(1);
    // global numeric flags are accepted on either side of the subcommand
    app.fallthrough();

    sz::RunConfig cfg;
    app.add_option("--precision-bits", cfg.precision_bits, "working precision in bits")
        ->envname("SERRE_ZEROS_PRECISION_BITS")
        ->capture_default_str();
    app.add_option("--truncation", cfg.truncation, "q-expansion window length")
        ->capture_default_str();
    app.add_option("--grid", cfg.grid_size, "scan grid size per arc")->capture_default_str();
    app.add_option("--tol", cfg.refine_tol, "bisection bracket width")->capture_default_str();
    app.add_option("--minima-threshold", cfg.minima_rel,
                   "even-zero dip threshold, relative to the grid max")
        ->capture_default_str();
    app.add_option("--eval-tol", cfg.eval_tol, "per-evaluation tail budget")
        ->capture_default_str();
    app.set_config("--config", "", "configuration file (key = value lines)");

    std::string form_text, domain = "exact", out_path, csv_path, json_path, levels_text;
    int level = 1, arc_id = 1, max_weight = 60, jobs = 1;
    int serre_n = 1, scan_n = 0, audit_n = 0, plot_n = 0;

    auto* gen = app.add_subcommand("gen", "emit a generator/expression q-expansion as JSON");
    gen->add_option("--form", form_text, "form expression")->required();
    gen->add_option("--level", level, "Fricke level (1, 2, 3, 5, 7)")->capture_default_str();
    gen->add_option("--domain", domain, "exact | float")->capture_default_str();
    gen->add_option("--out", out_path, "output path (default stdout)");

    auto* serre = app.add_subcommand("serre", "apply the Serre derivative, emit JSON");
    serre->add_option("--form", form_text, "form expression")->required();
    serre->add_option("--level", level, "Fricke level")->capture_default_str();
    serre->add_option("--iterate", serre_n, "number of applications")->capture_default_str();
    serre->add_option("--domain", domain, "exact | float")->capture_default_str();
    serre->add_option("--out", out_path, "output path (default stdout)");

    auto* geom = app.add_subcommand("geom", "dump the level geometry as JSON");
    geom->add_option("--level", level, "Fricke level")->capture_default_str();
    geom->add_option("--out", out_path, "output path (default stdout)");

    auto* zeros = app.add_subcommand("zeros", "scan boundary-arc zeros and audit the count");
    zeros->add_option("--form", form_text, "form expression")->required();
    zeros->add_option("--level", level, "Fricke level")->capture_default_str();
    zeros->add_option("--serre", scan_n, "scan the n-th Serre derivative")->capture_default_str();
    zeros->add_option("--csv", csv_path, "zero table output path (default stdout)");
    zeros->add_option("--json", json_path, "audit report output path (default stdout)");

    auto* audit = app.add_subcommand("audit", "valence audit only (JSON report)");
    audit->add_option("--form", form_text, "form expression")->required();
    audit->add_option("--level", level, "Fricke level")->capture_default_str();
    audit->add_option("--serre", audit_n, "audit the n-th Serre derivative")->capture_default_str();
    audit->add_option("--json", json_path, "report output path (default stdout)");

    auto* jp = app.add_subcommand("jpoly", "level-1 polynomial decomposition and certificate");
    jp->add_option("--form", form_text, "form expression (level 1)")->required();
    jp->add_option("--out", out_path, "output path (default stdout)");

    auto* plot = app.add_subcommand("plot-data", "emit (theta, F) samples as CSV");
    plot->add_option("--form", form_text, "form expression")->required();
    plot->add_option("--level", level, "Fricke level")->capture_default_str();
    plot->add_option("--arc", arc_id, "arc id (1 or 2)")->capture_default_str();
    plot->add_option("--serre", plot_n, "plot the n-th Serre derivative")->capture_default_str();
    plot->add_option("--out", out_path, "output path (default stdout)");

    auto* suite = app.add_subcommand("suite", "run the full corpus and summarize");
    suite->add_option("--levels", levels_text, "comma-separated levels")->default_val("1,2,3,5,7");
    suite->add_option("--max-weight", max_weight, "Eisenstein sweep bound")->capture_default_str();
    suite->add_option("--jobs", jobs, "concurrent corpus entries")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            sz::ExactForm f = build_form(form_text, level, cfg, 0);
            write_out(out_path, series_json(f, domain, cfg.precision_bits));
            return 0;
        }
        if (*serre) {
            sz::ExactForm f = build_form(form_text, level, cfg, serre_n);
            write_out(out_path, series_json(f, domain, cfg.precision_bits));
            return 0;
        }
        if (*geom) {
            write_out(out_path, sz::domain_spec_json(sz::DomainSpec::make(level)));
            return 0;
        }
        if (*zeros || *audit) {
            sz::ExactForm f = build_form(form_text, level, cfg, *zeros ? scan_n : audit_n);
            sz::DomainSpec spec = sz::DomainSpec::make(level);
            sz::AuditRun run = sz::scan_and_audit(f, spec, cfg);
            if (*zeros) write_out(csv_path, sz::zeros_csv(run.scans));
            write_out(json_path, sz::valence_report_json(run.report, f.label));
            return run.report.pass ? 0 : 1;
        }
        if (*jp) {
            // decomposition needs only a short window; keep the exact
            // arithmetic small unless the user insists otherwise
            sz::RunConfig jcfg = cfg;
            if (jcfg.truncation > 160) jcfg.truncation = 160;
            sz::ExactForm f = sz::parse_form_spec(form_text, 1, jcfg.truncation);
            sz::ArcCertificate cert = sz::certify_zeros_on_arc(f);
            write_out(out_path, sz::jpoly_json(cert, f.label));
            return cert.hypothesis_ok && (cert.certified || cert.f_dec.poly.is_zero()) ? 0 : 1;
        }
        if (*plot) {
            sz::ExactForm f = build_form(form_text, level, cfg, plot_n);
            sz::DomainSpec spec = sz::DomainSpec::make(level);
            sz::FloatForm ff = sz::to_float(f, cfg.precision_bits);
            const sz::ArcWindow& w = spec.arc(arc_id);
            std::ostringstream os;
            os << "theta,F\n";
            for (int i = 0; i < cfg.grid_size; ++i) {
                sz::BigFloat theta =
                    w.theta_lo + (w.theta_hi - w.theta_lo) * i / (cfg.grid_size - 1);
                sz::ArcValue v =
                    sz::arc_restriction(ff, spec, arc_id, theta, sz::BigFloat(cfg.eval_tol));
                os << sz::decimal_string(theta, 30) << ',' << sz::decimal_string(v.real_part, 30)
                   << '\n';
            }
            write_out(out_path, os.str());
            return 0;
        }
        if (*suite) {
            int failures = sz::run_suite(parse_levels(levels_text), max_weight, cfg, std::cout,
                                         jobs);
            return failures == 0 ? 0 : 1;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 2;
    }
    return 2;
}

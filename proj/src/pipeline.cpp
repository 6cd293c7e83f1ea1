#include "sz/pipeline.hpp"

#include <future>
#include <ostream>
#include <sstream>

namespace sz {

std::vector<CorpusEntry> acceptance_corpus(int level) {
    if (!supported_level(level)) throw std::invalid_argument("unsupported level");
    if (level == 1) {
        return {
            {1, "E4"},      {1, "E6"},      {1, "E4^2"},    {1, "E4*E6"},   {1, "E4^3"},
            {1, "E12"},     {1, "Delta*E4"}, {1, "E4/Delta"}, {1, "E6/Delta"},
        };
    }
    std::vector<CorpusEntry> out;
    for (int k : {4, 6, 8, 12}) out.push_back({level, "FrickeE(" + std::to_string(k) + ")"});
    return out;
}

ScanConfig scan_config_of(const RunConfig& cfg) {
    ScanConfig sc;
    sc.grid_size = cfg.grid_size;
    sc.refine_tol = BigFloat(cfg.refine_tol);
    sc.minima_rel = BigFloat(cfg.minima_rel);
    sc.eval_tol = BigFloat(cfg.eval_tol);
    return sc;
}

AuditRun scan_and_audit(const ExactForm& f, const DomainSpec& spec, const RunConfig& cfg) {
    AuditRun run{to_float(f, cfg.precision_bits), {}, {}};
    run.scans = scan_all_arcs(run.form, spec, scan_config_of(cfg));
    run.report = valence_audit(run.form, spec, run.scans);
    return run;
}

EntryOutcome run_corpus_entry(const CorpusEntry& entry, const RunConfig& cfg) {
    EntryOutcome out;
    out.entry = entry;
    std::ostringstream detail;

    DomainSpec spec = DomainSpec::make(entry.level);
    ExactForm f = parse_form_spec(entry.spec, entry.level, cfg.truncation);
    out.weight = f.weight;
    ExactForm df = serre_derivative(f);

    AuditRun fr = scan_and_audit(f, spec, cfg);
    out.hypothesis_pass = fr.report.pass;
    if (!fr.report.pass) detail << "audit(f): " << fr.report.diagnostics;

    AuditRun dfr = scan_and_audit(df, spec, cfg);
    out.derivative_pass = dfr.report.pass;
    if (!dfr.report.pass) detail << "audit(serre f): " << dfr.report.diagnostics;

    InterlacingReport inter = interlacing_check(fr.scans, dfr.scans, spec);
    out.interlacing_pass = inter.pass();
    if (!inter.pass()) detail << inter.violations << " interlacing gap(s) without a zero; ";

    out.realness_pass = true;
    for (const auto& arc : spec.arcs()) {
        RealnessReport rr = realness_check(fr.form, spec, arc.id, 512, BigFloat("1e-10"));
        if (!rr.pass) {
            out.realness_pass = false;
            detail << "max |Im F| = " << decimal_string(rr.max_imag, 3) << " on arc " << arc.id
                   << "; ";
        }
    }

    if (entry.level == 1) {
        // the polynomial route is checked against the q-expansion route at
        // a truncation that keeps the exact arithmetic small
        std::int64_t n = std::min<std::int64_t>(cfg.truncation, 128);
        ExactForm fs = parse_form_spec(entry.spec, 1, n);
        JDecomposition route_a = serre_poly(decompose(fs));
        JDecomposition route_b = decompose(serre_derivative(fs));
        out.oracle_equal = equivalent(route_a, route_b);
        if (!out.oracle_equal) detail << "decomposition routes disagree; ";
        ArcCertificate cert = certify_zeros_on_arc(fs);
        out.certified = cert.hypothesis_ok && cert.certified;
        if (!out.certified) detail << "certificate: " << cert.note << "; ";
    }

    out.detail = detail.str();
    return out;
}

namespace {

void print_line(std::ostream& os, const std::string& name, bool ok, const std::string& detail) {
    os << (ok ? "pass  " : "FAIL  ") << name;
    if (!ok && !detail.empty()) os << "  [" << detail << "]";
    os << '\n';
}

} // namespace

int run_suite(const std::vector<int>& levels, int max_weight, const RunConfig& cfg,
              std::ostream& out, int jobs) {
    int failures = 0;
    out << "suite: levels";
    for (int p : levels) out << ' ' << p;
    out << ", max weight " << max_weight << ", precision " << cfg.precision_bits
        << " bits, truncation " << cfg.truncation << "\n";

    for (int level : levels) {
        if (level == 1) {
            DomainSpec spec = DomainSpec::make(1);
            for (int k = 4; k <= max_weight; k += 2) {
                ExactForm ek = eisenstein(k, cfg.truncation);
                AuditRun run = scan_and_audit(ek, spec, cfg);
                bool ok = run.report.pass;
                std::string detail = run.report.diagnostics;
                if (k <= 40) {
                    ExactForm small = eisenstein(k, 96);
                    JDecomposition dec = decompose(small);
                    if (dec.poly.degree() >= 1) {
                        SturmResult roots = sturm_count(dec.poly, Rational(0), Rational(1728));
                        long total = 0;
                        for (const auto& iv : roots.roots) total += iv.multiplicity;
                        if (total != dec.poly.degree()) {
                            ok = false;
                            detail += "P_E" + std::to_string(k) + " roots escape [0,1728]; ";
                        }
                    }
                }
                if (!ok) ++failures;
                print_line(out, "E" + std::to_string(k) + " zeros on the arc (level 1)", ok,
                           detail);
            }
        }

        auto corpus = acceptance_corpus(level);
        std::vector<EntryOutcome> outcomes(corpus.size());
        if (jobs > 1) {
            std::vector<std::future<EntryOutcome>> futs;
            futs.reserve(corpus.size());
            for (const auto& e : corpus)
                futs.push_back(std::async(std::launch::async,
                                          [&cfg, e] { return run_corpus_entry(e, cfg); }));
            for (std::size_t i = 0; i < futs.size(); ++i) outcomes[i] = futs[i].get();
        } else {
            for (std::size_t i = 0; i < corpus.size(); ++i)
                outcomes[i] = run_corpus_entry(corpus[i], cfg);
        }
        for (const auto& oc : outcomes) {
            if (!oc.ok()) ++failures;
            print_line(out,
                       oc.entry.spec + " (level " + std::to_string(oc.entry.level) +
                           ", weight " + std::to_string(oc.weight) + ")",
                       oc.ok(), oc.detail);
        }
    }
    out << (failures == 0 ? "all items passed\n"
                          : std::to_string(failures) + " item(s) failed\n");
    return failures;
}

} // namespace sz

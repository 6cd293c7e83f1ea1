#pragma once

#include "sz/arc_analysis.hpp"
#include "sz/formspec.hpp"
#include "sz/jpoly.hpp"

#include <iosfwd>
#include <vector>

namespace sz {

struct CorpusEntry {
    int level = 1;
    std::string spec;
};

// The standing corpus: holomorphic and weakly holomorphic combinations at
// level 1, symmetrized Eisenstein forms at levels 2, 3, 5, 7.
std::vector<CorpusEntry> acceptance_corpus(int level);

ScanConfig scan_config_of(const RunConfig& cfg);

struct AuditRun {
    FloatForm form;
    std::vector<ScanResult> scans;
    ValenceReport report;
};

// Convert to the float domain, scan every arc of the level, audit.
AuditRun scan_and_audit(const ExactForm& f, const DomainSpec& spec, const RunConfig& cfg);

struct EntryOutcome {
    CorpusEntry entry;
    int weight = 0;
    bool hypothesis_pass = false;  // audit of f closes
    bool derivative_pass = false;  // audit of serre(f) closes
    bool interlacing_pass = false;
    bool realness_pass = false;
    bool oracle_equal = true;      // level 1: both decomposition routes agree
    bool certified = true;         // level 1: Sturm certificate of the derivative
    std::string detail;

    bool ok() const {
        return hypothesis_pass && derivative_pass && interlacing_pass && realness_pass &&
               oracle_equal && certified;
    }
};

EntryOutcome run_corpus_entry(const CorpusEntry& entry, const RunConfig& cfg);

// Eisenstein sweep at level 1 plus the corpus of every requested level;
// prints one line per item and returns the number of failures.
int run_suite(const std::vector<int>& levels, int max_weight, const RunConfig& cfg,
              std::ostream& out, int jobs = 1);

} // namespace sz

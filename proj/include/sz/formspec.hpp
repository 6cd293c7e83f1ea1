#pragma once

#include "sz/generators.hpp"

#include <string>

namespace sz {

// Run-wide knobs shared by the CLI subcommands; the defaults are the
// documented ones and apply wherever a flag or config key is unset.
struct RunConfig {
    unsigned precision_bits = 192;
    std::int64_t truncation = 1024;
    int grid_size = 2048;
    double refine_tol = 1e-12;
    double minima_rel = 1e-8;   // dip threshold relative to the grid max
    double eval_tol = 1e-20;
    std::string out_csv;
    std::string out_json;
};

/*
 * Tiny expression language over the generator forms, e.g.
 *
 *   "E4^3 - E6^2"        (level 1)
 *   "E4 * (j - 2000)"    (level 1, weight-0 scalars combine with j)
 *   "FrickeE(6)"         (levels 2, 3, 5, 7)
 *
 * Identifiers: E2, E4, E6, E<k> (or E_<k>), Delta, j, E2p, FrickeE(k);
 * operators + - * / ^ with integer scalars. Weights are inferred and
 * mixed-weight addition is rejected. Everything is built in the exact
 * domain at the requested truncation.
 */
ExactForm parse_form_spec(const std::string& text, int level, std::int64_t truncation);

} // namespace sz

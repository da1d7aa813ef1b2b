// Command line driver for the pipeline. Subcommands name the last stage to
// run (lvalue runs on its own, everything else is cumulative); `all` and
// `compare` both run the whole chain and finish with report.json.

#include <getopt.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "ellreg/pipeline.hpp"

using namespace ellreg;

static void usage(std::FILE* f) {
  std::fprintf(f,
               "usage: ellreg <subcommand> [options]\n"
               "\n"
               "subcommands:\n"
               "  points       support points of the divisor search\n"
               "  heights      exact finite local heights at the scanned places\n"
               "  kernel       integer kernel of the exact constraint rows\n"
               "  relations    rank-8 divisor lattice via lattice reduction\n"
               "  regulators   elliptic-dilogarithm vectors of the divisors\n"
               "  lvalue       second derivative of the L-series at s = 0\n"
               "  compare      determinant ratios against the L-value\n"
               "  all          same as compare: run everything\n"
               "\n"
               "options:\n"
               "  --precision-digits <n>   working precision (default 100)\n"
               "  --coeff-bound <n>        Dirichlet coefficients up to n (default 30000)\n"
               "  --lll-scale <n>          scaling exponent for the reduction (default 60)\n"
               "  --divisors-from-table2   use the reference divisor columns, skip reduction\n"
               "  --skip-lvalue            leave the L-value (and the ratios) out\n"
               "  --mode <golden|self>     cross-check against reference values, or not\n"
               "  --out <dir>              artifact directory (default ellreg_out)\n"
               "  --help\n");
}

int main(int argc, char** argv) {
  PipelineConfig cfg;
  cfg.verbose = true;

  static const option longopts[] = {
      {"precision-digits", required_argument, nullptr, 'd'},
      {"coeff-bound", required_argument, nullptr, 'n'},
      {"lll-scale", required_argument, nullptr, 's'},
      {"divisors-from-table2", no_argument, nullptr, 't'},
      {"skip-lvalue", no_argument, nullptr, 'k'},
      {"mode", required_argument, nullptr, 'm'},
      {"out", required_argument, nullptr, 'o'},
      {"help", no_argument, nullptr, 'h'},
      {nullptr, 0, nullptr, 0},
  };

  int c;
  while ((c = getopt_long(argc, argv, "h", longopts, nullptr)) != -1) {
    switch (c) {
      case 'd': cfg.digits = std::atoi(optarg); break;
      case 'n': cfg.coeff_bound = std::atol(optarg); break;
      case 's': cfg.lll_scale = std::atol(optarg); break;
      case 't': cfg.divisors_from_table2 = true; break;
      case 'k': cfg.skip_lvalue = true; break;
      case 'm':
        if (std::strcmp(optarg, "golden") == 0) cfg.golden = true;
        else if (std::strcmp(optarg, "self") == 0) cfg.golden = false;
        else {
          std::fprintf(stderr, "ellreg: unknown mode '%s'\n", optarg);
          return 2;
        }
        break;
      case 'o': cfg.out_dir = optarg; break;
      case 'h': usage(stdout); return 0;
      default: usage(stderr); return 2;
    }
  }
  if (optind != argc - 1) {
    usage(stderr);
    return 2;
  }
  if (cfg.digits < 20 || cfg.digits > 10000) {
    std::fprintf(stderr, "ellreg: --precision-digits out of range\n");
    return 2;
  }
  if (cfg.coeff_bound < 1) {
    std::fprintf(stderr, "ellreg: --coeff-bound must be positive\n");
    return 2;
  }

  std::string cmd = argv[optind];
  Stage upto;
  if (cmd == "points") upto = Stage::points;
  else if (cmd == "heights") upto = Stage::heights;
  else if (cmd == "kernel") upto = Stage::kernel;
  else if (cmd == "relations") upto = Stage::relations;
  else if (cmd == "regulators") upto = Stage::regulators;
  else if (cmd == "lvalue") upto = Stage::lvalue;
  else if (cmd == "compare" || cmd == "all") upto = Stage::compare;
  else {
    std::fprintf(stderr, "ellreg: unknown subcommand '%s'\n", cmd.c_str());
    usage(stderr);
    return 2;
  }

  try {
    PipelineResult res = run_pipeline(cfg, upto);
    std::printf("report: %s/report.json\n", cfg.out_dir.c_str());
    if (!res.ok) {
      std::fprintf(stderr, "ellreg: stage %s failed: %s\n", res.failed_stage.c_str(),
                   res.message.c_str());
      return 1;
    }
    if (upto == Stage::compare && res.l_value) {
      std::printf("L-value leading coefficient: %s\n", res.l_value->str_fixed(25).c_str());
      std::printf("determinants: %zu zero of %zu, %zu ratios recognized\n",
                  (size_t)res.zero_count, res.dets.size(), res.ratios.size());
    }
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ellreg: %s\n", e.what());
    return 1;
  }
}

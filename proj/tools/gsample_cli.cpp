#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gsample/gsample.h"

namespace {

constexpr int kUsage = 1;
constexpr int kDataError = 2;

std::string method_list() {
  std::string s;
  for (size_t i = 0; i < gs_method_count(); ++i) {
    if (i) s += ", ";
    s += gs_method_name(i);
  }
  return s;
}

bool known_method(const std::string& m) {
  for (size_t i = 0; i < gs_method_count(); ++i) {
    if (m == gs_method_name(i)) return true;
  }
  return false;
}

int fail(gs_status st) {
  std::cerr << "error: " << gs_status_name(st) << ": " << gs_last_error() << '\n';
  return st == GS_ERR_INVALID_ARGUMENT ? kUsage : kDataError;
}

int data_fail(gs_status st) {
  std::cerr << "error: " << gs_status_name(st) << ": " << gs_last_error() << '\n';
  return kDataError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph sampling and evaluation toolkit"};
  app.require_subcommand(1);
  app.footer(
      "Methods: " + method_list() +
      "\nDefaults: trials 10, phi grid 5%..40% step 5%, window 100, p_f 0.7, "
      "alpha 0.99\nExit codes: 0 success, 1 usage error, 2 data or processing error");

  gs_sample_params sp;
  gs_sample_params_init(&sp);
  sp.phi = 0.0;

  // sample
  auto* sample = app.add_subcommand("sample", "Draw one sampled subgraph");
  std::string method, input, output;
  double phi = 0.0;
  size_t nodes = 0;
  uint64_t seed = 1;
  uint64_t stream_seed = 0;
  bool stream_seed_set = false;
  bool keyed = false;
  bool in_order = false;
  sample->add_option("--method,-m", method, "One of: " + method_list())->required();
  auto* phi_opt = sample->add_option("--phi", phi, "Sampling fraction in (0, 1]")
                      ->check(CLI::Range(0.0, 1.0));
  auto* nodes_opt = sample->add_option("--nodes,-n", nodes, "Target node count (wins over --phi)")
                        ->check(CLI::PositiveNumber);
  sample->add_option("--seed,-s", seed, "Sampler seed")->default_val(1);
  sample->add_option("--window,-w", sp.window, "Stream BFS window size")->default_val(100);
  sample->add_option("--pf", sp.burn_probability, "Forest fire burn probability")
      ->default_val(0.7)
      ->check(CLI::Range(0.0, 1.0));
  sample->add_option("--reservoir", sp.reservoir_edges,
                     "Stream ES reservoir size in edges (default n)");
  sample->add_option("--stream-seed", stream_seed, "Edge permutation seed (default --seed)")
      ->each([&](const std::string&) { stream_seed_set = true; });
  sample->add_flag("--keyed-hash", keyed, "Hash-sorted stream order instead of a shuffle");
  sample->add_flag("--in-order", in_order,
                   "Replay the input file as the stream, in file order");
  sample->add_option("-i,--input", input, "Edge list")->required();
  sample->add_option("-o,--output", output, "Sample edge list (plus .meta.json)")->required();

  // stats
  auto* stats = app.add_subcommand("stats", "Compute the statistic profile of a graph");
  std::string stats_in, stats_out;
  gs_profile_params pp;
  gs_profile_params_init(&pp);
  stats->add_option("-i,--input", stats_in, "Edge list")->required();
  stats->add_option("-o,--output", stats_out, "Profile directory")->required();
  stats->add_option("--path-exact-limit", pp.path_exact_limit,
                    "Exact path lengths up to this many nodes")
      ->default_val(pp.path_exact_limit);
  stats->add_option("--path-sources", pp.path_sources, "BFS sources above the limit")
      ->default_val(pp.path_sources);

  // compare
  auto* compare = app.add_subcommand("compare", "Distances between two profiles");
  std::string full_p, sample_p, report_out;
  double alpha = 0.99;
  compare->add_option("--full", full_p, "Profile of the full graph")->required();
  compare->add_option("--sample", sample_p, "Profile of the sample")->required();
  compare->add_option("-o,--output", report_out, "Report CSV")->required();
  compare->add_option("--alpha", alpha, "Skew divergence smoothing")
      ->default_val(0.99)
      ->check(CLI::Range(0.0, 1.0));

  // eval
  auto* eval = app.add_subcommand("eval", "Run an experiment from a config file");
  std::string config, eval_out;
  unsigned jobs = 0;
  eval->add_option("-c,--config", config, "Experiment config")->required();
  eval->add_option("-o,--output", eval_out, "Output directory")->required();
  eval->add_option("--jobs,-j", jobs, "Concurrent trial workers (default from config)");

  // classify
  auto* classify = app.add_subcommand("classify", "wvRN cross-validated AUC on samples");
  std::string cls_in, labels, cls_method, cls_out;
  double cls_phi = 0.2;
  size_t cls_nodes = 0;
  std::vector<double> fracs;
  gs_classify_params cp;
  gs_classify_params_init(&cp);
  classify->add_option("-i,--input", cls_in, "Edge list")->required();
  classify->add_option("--labels", labels, "node_id,label CSV")->required();
  classify->add_option("--method,-m", cls_method, "One of: " + method_list())->required();
  classify->add_option("--phi", cls_phi, "Sampling fraction")
      ->default_val(0.2)
      ->check(CLI::Range(0.0, 1.0));
  classify->add_option("--nodes,-n", cls_nodes, "Target node count (wins over --phi)");
  classify->add_option("--labeled-frac,-q", fracs, "Labeled proportions (default 0.1..0.8)")
      ->check(CLI::Range(0.0, 1.0));
  classify->add_option("--folds", cp.folds, "Cross-validation folds")->default_val(5);
  classify->add_option("--trials", cp.trials, "Sampling trials")->default_val(1);
  classify->add_option("--seed,-s", cp.seed, "Base seed")->default_val(1);
  classify->add_option("-o,--output", cls_out, "AUC table CSV")->required();

  // permute
  auto* permute = app.add_subcommand("permute", "Write a seeded edge stream order");
  std::string perm_in, perm_out;
  uint64_t perm_seed = 1;
  bool perm_keyed = false;
  permute->add_option("-i,--input", perm_in, "Edge list")->required();
  permute->add_option("--seed,-s", perm_seed, "Permutation seed")->default_val(1);
  permute->add_flag("--keyed-hash", perm_keyed, "Hash-sorted order instead of a shuffle");
  permute->add_option("-o,--output", perm_out, "Stream file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*sample) {
    if (!known_method(method)) {
      std::cerr << "error: unknown method '" << method << "'\nmethods: " << method_list()
                << '\n';
      return kUsage;
    }
    if (!*nodes_opt && !*phi_opt) {
      std::cerr << "error: one of --phi or --nodes is required\n";
      return kUsage;
    }
    sp.phi = phi;
    sp.nodes = *nodes_opt ? nodes : 0;
    sp.seed = seed;
    sp.stream_seed = stream_seed_set ? stream_seed : seed;
    sp.keyed_hash_order = keyed ? 1 : 0;
    gs_sample* s = nullptr;
    gs_status st;
    if (in_order) {
      st = gs_sample_run_file_stream(input.c_str(), method.c_str(), &sp, &s);
    } else {
      gs_graph* g = nullptr;
      st = gs_graph_load(input.c_str(), 1, 1, &g);
      if (st != GS_OK) return data_fail(st);
      st = gs_sample_run(g, method.c_str(), &sp, &s);
      gs_graph_free(g);
    }
    if (st != GS_OK) return fail(st);
    st = gs_sample_write(s, output.c_str());
    const gs_graph* sg = gs_sample_graph(s);
    std::cout << method << ": " << gs_graph_num_nodes(sg) << " nodes, "
              << gs_graph_num_edges(sg) << " edges -> " << output << '\n';
    gs_sample_free(s);
    return st == GS_OK ? 0 : data_fail(st);
  }

  if (*stats) {
    gs_graph* g = nullptr;
    gs_status st = gs_graph_load_sample(stats_in.c_str(), &g);
    if (st != GS_OK) return data_fail(st);
    gs_profile* p = nullptr;
    st = gs_profile_compute(g, &pp, &p);
    gs_graph_free(g);
    if (st != GS_OK) return data_fail(st);
    st = gs_profile_write(p, stats_out.c_str());
    gs_profile_free(p);
    return st == GS_OK ? 0 : data_fail(st);
  }

  if (*compare) {
    gs_profile* a = nullptr;
    gs_profile* b = nullptr;
    gs_status st = gs_profile_read(full_p.c_str(), &a);
    if (st != GS_OK) return data_fail(st);
    st = gs_profile_read(sample_p.c_str(), &b);
    if (st != GS_OK) {
      gs_profile_free(a);
      return data_fail(st);
    }
    gs_report* r = nullptr;
    st = gs_compare(a, b, alpha, &r);
    gs_profile_free(a);
    gs_profile_free(b);
    if (st != GS_OK) return data_fail(st);
    st = gs_report_write(r, report_out.c_str());
    std::cout << "mean KS " << gs_report_mean_ks(r) << '\n';
    gs_report_free(r);
    return st == GS_OK ? 0 : data_fail(st);
  }

  if (*eval) {
    const gs_status st = gs_eval_run(config.c_str(), eval_out.c_str(), jobs);
    if (st == GS_OK) return 0;
    // A malformed config is a usage error.
    if (st == GS_ERR_PARSE || st == GS_ERR_INVALID_ARGUMENT) {
      std::cerr << "error: " << gs_status_name(st) << ": " << gs_last_error() << '\n';
      return kUsage;
    }
    return data_fail(st);
  }

  if (*classify) {
    if (!known_method(cls_method)) {
      std::cerr << "error: unknown method '" << cls_method << "'\nmethods: " << method_list()
                << '\n';
      return kUsage;
    }
    gs_graph* g = nullptr;
    gs_status st = gs_graph_load(cls_in.c_str(), 1, 1, &g);
    if (st != GS_OK) return data_fail(st);
    sp.phi = cls_phi;
    sp.nodes = cls_nodes;
    sp.seed = cp.seed;
    sp.stream_seed = cp.seed;
    if (!fracs.empty()) {
      cp.labeled_fracs = fracs.data();
      cp.num_labeled_fracs = fracs.size();
    }
    st = gs_classify_run(g, labels.c_str(), cls_method.c_str(), &sp, &cp, cls_out.c_str());
    gs_graph_free(g);
    return st == GS_OK ? 0 : fail(st);
  }

  if (*permute) {
    gs_graph* g = nullptr;
    gs_status st = gs_graph_load(perm_in.c_str(), 1, 1, &g);
    if (st != GS_OK) return data_fail(st);
    st = gs_permute_write(g, perm_seed, perm_keyed ? 1 : 0, perm_out.c_str());
    gs_graph_free(g);
    return st == GS_OK ? 0 : data_fail(st);
  }
  return kUsage;
}

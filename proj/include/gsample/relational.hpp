#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gsample/graph.hpp"
#include "gsample/samplers.hpp"

namespace gsample {

/// Graph whose every node carries exactly one class label.
struct LabeledGraph {
  Graph graph;
  std::vector<std::string> classes;   // sorted class names
  std::vector<std::uint32_t> labels;  // class index per NodeIndex
  /// Optional edge weights keyed by canonical edge; absent edges weigh 1.
  std::unordered_map<Edge, double, EdgeHasher> weights;

  double weight(NodeIndex a, NodeIndex b) const;
  std::size_t num_classes() const noexcept { return classes.size(); }
  std::uint32_t label_of(NodeId id) const { return labels[graph.index_of(id)]; }
};

/// Throws InvalidArgument when a node has no label.
LabeledGraph make_labeled_graph(Graph g,
                                const std::unordered_map<NodeId, std::string>& labels);

/// Labels carried from the population onto a sample over the same class set.
LabeledGraph restrict_labels(const LabeledGraph& population, const Graph& sample);

/// Exact class histogram over all nodes.
std::vector<double> class_distribution(const LabeledGraph& lg);
/// Fraction of sampled nodes in each class.
std::vector<double> estimate_class_priors(const LabeledGraph& lg,
                                          std::span<const NodeId> sampled);
/// Index of the largest class (lowest index on ties).
std::uint32_t most_prevalent_class(const LabeledGraph& lg);

struct WvrnOptions {
  std::size_t max_iter = 100;
  double tol = 1e-4;
};

struct InferenceState {
  std::size_t num_classes = 0;
  std::vector<double> prob;  // row-major: node * num_classes + class
  std::vector<char> known;
  std::size_t iterations = 0;
  double delta = 0.0;
  bool converged = false;

  std::span<const double> row(NodeIndex i) const {
    return std::span(prob).subspan(i * num_classes, num_classes);
  }
};

/// Synchronous wvRN relaxation with `known` nodes fixed to their one-hot
/// labels and every other node starting at the labeled-set prior.
InferenceState wvrn_infer(const LabeledGraph& lg, std::span<const char> known,
                          const WvrnOptions& opts = {});

/// Uniform random labeled_frac of the nodes fixed, then wvrn_infer.
InferenceState wvrn_classify(const LabeledGraph& lg, double labeled_frac,
                             std::uint64_t seed, const WvrnOptions& opts = {});

/// Rank-based AUC (Mann-Whitney) with ties counted half.
double auc(std::span<const double> scores, std::span<const char> truth);

struct CvConfig {
  std::string method = "esi";
  MethodParams params;
  std::vector<double> labeled_fracs = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  std::size_t folds = 5;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  WvrnOptions wvrn;
};

struct AucRow {
  std::string graph;  // "full" or "sample"
  std::string method;
  double phi = 0.0;
  double labeled_frac = 0.0;
  std::size_t fold = 0;
  std::size_t trial = 0;
  double auc = 0.0;  // NaN when the test fold lacks one of the classes
};

/// Fold f of n nodes: a seeded balanced partition, fold[i] in [0, folds).
std::vector<std::uint32_t> assign_folds(std::size_t n, std::size_t folds,
                                        std::uint64_t seed);

/// Cross-validated wvRN AUC for the target class on one graph.
std::vector<AucRow> cv_auc(const LabeledGraph& lg, std::uint32_t target_class,
                           const std::vector<double>& labeled_fracs,
                           std::size_t folds, std::uint64_t seed,
                           const WvrnOptions& opts = {});

/// For each trial: sample the population, then cross-validate on the full
/// graph and on the sample with the same CV seed. The target class is the
/// population's most prevalent one.
std::vector<AucRow> cv_experiment(const LabeledGraph& lg, const CvConfig& cfg);

struct AucSummary {
  std::string graph;
  double labeled_frac = 0.0;
  double mean_auc = 0.0;
  std::size_t count = 0;
};
std::vector<AucSummary> summarize_auc(std::span<const AucRow> rows);

/// graph,method,phi,labeled_frac,fold,trial,auc
void write_auc_table(std::ostream& out, std::span<const AucRow> rows);

}  // namespace gsample

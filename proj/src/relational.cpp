#include "gsample/relational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "gsample/error.hpp"
#include "gsample/hashing.hpp"

namespace gsample {

double LabeledGraph::weight(NodeIndex a, NodeIndex b) const {
  if (weights.empty()) return 1.0;
  const auto it = weights.find(Edge{graph.id(a), graph.id(b)}.canonical());
  return it == weights.end() ? 1.0 : it->second;
}

LabeledGraph make_labeled_graph(Graph g,
                                const std::unordered_map<NodeId, std::string>& labels) {
  LabeledGraph lg;
  std::set<std::string> names;
  for (NodeId id : g.node_ids()) {
    const auto it = labels.find(id);
    if (it == labels.end()) {
      throw InvalidArgument("node " + std::to_string(id) + " has no label");
    }
    names.insert(it->second);
  }
  lg.classes.assign(names.begin(), names.end());
  std::map<std::string, std::uint32_t> index;
  for (std::uint32_t c = 0; c < lg.classes.size(); ++c) index[lg.classes[c]] = c;
  lg.labels.reserve(g.num_nodes());
  for (NodeId id : g.node_ids()) lg.labels.push_back(index.at(labels.at(id)));
  lg.graph = std::move(g);
  return lg;
}

LabeledGraph restrict_labels(const LabeledGraph& population, const Graph& sample) {
  LabeledGraph lg;
  lg.graph = sample;
  lg.classes = population.classes;
  lg.labels.reserve(sample.num_nodes());
  for (NodeId id : sample.node_ids()) lg.labels.push_back(population.label_of(id));
  for (const Edge& e : sample.edges()) {
    const auto it = population.weights.find(e);
    if (it != population.weights.end()) lg.weights.emplace(e, it->second);
  }
  return lg;
}

std::vector<double> class_distribution(const LabeledGraph& lg) {
  if (lg.labels.empty()) throw EmptyGraphError("no labeled nodes");
  std::vector<double> p(lg.num_classes(), 0.0);
  for (auto c : lg.labels) p[c] += 1.0;
  for (auto& x : p) x /= static_cast<double>(lg.labels.size());
  return p;
}

std::vector<double> estimate_class_priors(const LabeledGraph& lg,
                                          std::span<const NodeId> sampled) {
  if (sampled.empty()) throw InvalidArgument("empty sampled node set");
  std::vector<double> p(lg.num_classes(), 0.0);
  for (NodeId id : sampled) p[lg.label_of(id)] += 1.0;
  for (auto& x : p) x /= static_cast<double>(sampled.size());
  return p;
}

std::uint32_t most_prevalent_class(const LabeledGraph& lg) {
  const auto p = class_distribution(lg);
  return static_cast<std::uint32_t>(std::max_element(p.begin(), p.end()) - p.begin());
}

// ---------------------------------------------------------------------------

InferenceState wvrn_infer(const LabeledGraph& lg, std::span<const char> known,
                          const WvrnOptions& opts) {
  const std::size_t n = lg.graph.num_nodes();
  const std::size_t k = lg.num_classes();
  if (known.size() != n) throw InvalidArgument("known mask size mismatch");
  std::vector<double> prior(k, 0.0);
  std::size_t labeled = 0;
  for (NodeIndex i = 0; i < n; ++i) {
    if (!known[i]) continue;
    prior[lg.labels[i]] += 1.0;
    ++labeled;
  }
  if (labeled == 0) throw InvalidArgument("wvRN needs at least one labeled node");
  for (auto& x : prior) x /= static_cast<double>(labeled);

  InferenceState st;
  st.num_classes = k;
  st.known.assign(known.begin(), known.end());
  st.prob.assign(n * k, 0.0);
  for (NodeIndex i = 0; i < n; ++i) {
    double* row = st.prob.data() + i * k;
    if (known[i]) {
      row[lg.labels[i]] = 1.0;
    } else {
      std::copy(prior.begin(), prior.end(), row);
    }
  }

  std::vector<double> next = st.prob;
  for (st.iterations = 0; st.iterations < opts.max_iter;) {
    double delta = 0.0;
    for (NodeIndex i = 0; i < n; ++i) {
      if (known[i] || lg.graph.degree(i) == 0) continue;
      double* out = next.data() + i * k;
      std::fill(out, out + k, 0.0);
      double z = 0.0;
      for (NodeIndex j : lg.graph.neighbors(i)) {
        const double w = lg.weight(i, j);
        z += w;
        const double* pj = st.prob.data() + j * k;
        for (std::size_t c = 0; c < k; ++c) out[c] += w * pj[c];
      }
      const double* old = st.prob.data() + i * k;
      for (std::size_t c = 0; c < k; ++c) {
        out[c] /= z;
        delta = std::max(delta, std::abs(out[c] - old[c]));
      }
    }
    // Fixed and isolated rows never change, so both buffers agree on them.
    st.prob.swap(next);
    ++st.iterations;
    st.delta = delta;
    if (delta <= opts.tol) {
      st.converged = true;
      break;
    }
  }
  return st;
}

InferenceState wvrn_classify(const LabeledGraph& lg, double labeled_frac,
                             std::uint64_t seed, const WvrnOptions& opts) {
  if (!(labeled_frac > 0.0 && labeled_frac < 1.0)) {
    throw InvalidArgument("labeled fraction must lie in (0, 1)");
  }
  const std::size_t n = lg.graph.num_nodes();
  const auto count = static_cast<std::size_t>(
      std::llround(labeled_frac * static_cast<double>(n)));
  if (count == 0) throw InvalidArgument("labeled fraction selects no nodes");
  std::vector<NodeIndex> order(n);
  for (NodeIndex i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  std::vector<char> known(n, 0);
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(order[i], order[j]);
    known[order[i]] = 1;
  }
  return wvrn_infer(lg, known, opts);
}

double auc(std::span<const double> scores, std::span<const char> truth) {
  if (scores.size() != truth.size()) throw InvalidArgument("AUC size mismatch");
  std::vector<std::size_t> idx(scores.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double pos = 0, neg = 0, rank_sum = 0;
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) {
      if (truth[idx[t]]) {
        rank_sum += avg_rank;
        ++pos;
      } else {
        ++neg;
      }
    }
    i = j;
  }
  if (pos == 0 || neg == 0) throw InvalidArgument("AUC needs both classes present");
  return (rank_sum - pos * (pos + 1) / 2) / (pos * neg);
}

// ---------------------------------------------------------------------------

std::vector<std::uint32_t> assign_folds(std::size_t n, std::size_t folds,
                                        std::uint64_t seed) {
  if (folds == 0) throw InvalidArgument("fold count must be >= 1");
  std::vector<std::uint32_t> fold(n);
  for (std::size_t i = 0; i < n; ++i) fold[i] = static_cast<std::uint32_t>(i % folds);
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(fold[i - 1], fold[rng.below(i)]);
  }
  return fold;
}

std::vector<AucRow> cv_auc(const LabeledGraph& lg, std::uint32_t target_class,
                           const std::vector<double>& labeled_fracs,
                           std::size_t folds, std::uint64_t seed,
                           const WvrnOptions& opts) {
  const std::size_t n = lg.graph.num_nodes();
  const auto fold = assign_folds(n, folds, derive_seed(seed, 0));
  std::vector<AucRow> rows;
  for (std::size_t q = 0; q < labeled_fracs.size(); ++q) {
    const double frac = labeled_fracs[q];
    for (std::uint32_t f = 0; f < folds; ++f) {
      std::vector<NodeIndex> train, test;
      for (NodeIndex i = 0; i < n; ++i) (fold[i] == f ? test : train).push_back(i);
      const auto want = static_cast<std::size_t>(
          std::llround(frac * static_cast<double>(n)));
      const std::size_t count = std::clamp<std::size_t>(want, 1, train.size());
      AucRow row;
      row.labeled_frac = frac;
      row.fold = f;
      row.auc = std::numeric_limits<double>::quiet_NaN();
      if (train.empty() || test.empty()) {
        rows.push_back(row);
        continue;
      }
      Rng rng(derive_seed(seed, 1 + q * folds + f));
      std::vector<char> known(n, 0);
      for (std::size_t i = 0; i < count; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(train.size() - i));
        std::swap(train[i], train[j]);
        known[train[i]] = 1;
      }
      const auto st = wvrn_infer(lg, known, opts);
      std::vector<double> scores;
      std::vector<char> truth;
      for (NodeIndex i : test) {
        scores.push_back(st.prob[i * st.num_classes + target_class]);
        truth.push_back(lg.labels[i] == target_class);
      }
      const bool both = std::find(truth.begin(), truth.end(), 1) != truth.end() &&
                        std::find(truth.begin(), truth.end(), 0) != truth.end();
      if (both) row.auc = auc(scores, truth);
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<AucRow> cv_experiment(const LabeledGraph& lg, const CvConfig& cfg) {
  const std::uint32_t target = most_prevalent_class(lg);
  const double phi = cfg.params.spec.nodes ? 0.0 : cfg.params.spec.phi;
  std::vector<AucRow> out;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const std::uint64_t trial_seed = cfg.seed + t;
    MethodParams p = cfg.params;
    p.spec.seed = derive_seed(trial_seed, 1);
    p.stream_seed = trial_seed;
    const auto sample = run_method(lg.graph, cfg.method, p);
    const auto sub = restrict_labels(lg, sample.graph);
    const std::uint64_t cv_seed = derive_seed(trial_seed, 2);
    for (auto [name, g] : {std::pair<const char*, const LabeledGraph*>{"full", &lg},
                           {"sample", &sub}}) {
      for (AucRow r : cv_auc(*g, target, cfg.labeled_fracs, cfg.folds, cv_seed, cfg.wvrn)) {
        r.graph = name;
        r.method = cfg.method;
        r.phi = phi;
        r.trial = t;
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

std::vector<AucSummary> summarize_auc(std::span<const AucRow> rows) {
  std::map<std::pair<std::string, double>, std::pair<double, std::size_t>> acc;
  for (const auto& r : rows) {
    if (std::isnan(r.auc)) continue;
    auto& a = acc[{r.graph, r.labeled_frac}];
    a.first += r.auc;
    ++a.second;
  }
  std::vector<AucSummary> out;
  for (const auto& [key, a] : acc) {
    out.push_back({key.first, key.second, a.first / static_cast<double>(a.second),
                   a.second});
  }
  return out;
}

void write_auc_table(std::ostream& out, std::span<const AucRow> rows) {
  const auto prec = out.precision(10);
  out << "graph,method,phi,labeled_frac,fold,trial,auc\n";
  for (const auto& r : rows) {
    out << r.graph << ',' << r.method << ',' << r.phi << ',' << r.labeled_frac << ','
        << r.fold << ',' << r.trial << ',' << r.auc << '\n';
  }
  out.precision(prec);
}

}  // namespace gsample

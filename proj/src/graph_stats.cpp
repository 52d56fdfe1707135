#include "gsample/graph_stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

#include <Eigen/Dense>
#include <json.hpp>

#include "gsample/error.hpp"
#include "gsample/hashing.hpp"

namespace gsample {

namespace {

void require_nodes(const Graph& g) {
  if (g.empty()) throw EmptyGraphError("statistic of an empty graph");
}

Distribution normalize(const std::vector<std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  Distribution d;
  if (total == 0) return d;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k]) d[static_cast<std::int64_t>(k)] =
        static_cast<double>(counts[k]) / static_cast<double>(total);
  }
  return d;
}

}  // namespace

std::vector<std::pair<std::int64_t, double>> cdf(const Distribution& d) {
  std::vector<std::pair<std::int64_t, double>> out;
  out.reserve(d.size());
  double acc = 0.0;
  for (const auto& [k, p] : d) {
    acc += p;
    out.emplace_back(k, acc);
  }
  if (!out.empty()) out.back().second = std::min(out.back().second, 1.0);
  return out;
}

std::vector<std::pair<std::int64_t, double>> ccdf(const Distribution& d) {
  auto out = cdf(d);
  for (auto& [k, f] : out) f = 1.0 - f;
  return out;
}

Distribution degree_distribution(const Graph& g) {
  require_nodes(g);
  std::vector<std::uint64_t> counts;
  for (NodeIndex i = 0; i < g.num_nodes(); ++i) {
    const auto d = g.degree(i);
    if (d >= counts.size()) counts.resize(d + 1, 0);
    ++counts[d];
  }
  return normalize(counts);
}

// ---------------------------------------------------------------------------

PathLengthDistribution path_length_distribution(const Graph& g,
                                                const PathLengthOptions& opts) {
  require_nodes(g);
  const std::size_t n = g.num_nodes();
  std::vector<NodeIndex> sources(n);
  for (NodeIndex i = 0; i < n; ++i) sources[i] = i;
  PathLengthDistribution out;
  if (n > opts.exact_limit && opts.sources < n) {
    Rng rng(opts.seed);
    for (std::size_t i = 0; i < opts.sources; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(n - i));
      std::swap(sources[i], sources[j]);
    }
    sources.resize(opts.sources);
    std::sort(sources.begin(), sources.end());
    out.exact = false;
  }
  out.sources = sources.size();

  unsigned threads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, 64);
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, sources.size()));

  std::vector<std::vector<std::uint64_t>> hist(threads);
  auto worker = [&](unsigned t) {
    std::vector<std::uint32_t> dist(n, std::numeric_limits<std::uint32_t>::max());
    std::vector<NodeIndex> queue(n);
    std::vector<NodeIndex> touched;
    auto& h = hist[t];
    for (std::size_t s = t; s < sources.size(); s += threads) {
      std::size_t head = 0, tail = 0;
      queue[tail++] = sources[s];
      dist[sources[s]] = 0;
      while (head < tail) {
        const NodeIndex u = queue[head++];
        const std::uint32_t du = dist[u] + 1;
        for (NodeIndex w : g.neighbors(u)) {
          if (dist[w] != std::numeric_limits<std::uint32_t>::max()) continue;
          dist[w] = du;
          queue[tail++] = w;
          if (du >= h.size()) h.resize(du + 1, 0);
          ++h[du];
        }
      }
      for (std::size_t i = 0; i < tail; ++i) {
        dist[queue[i]] = std::numeric_limits<std::uint32_t>::max();
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  std::vector<std::uint64_t> total;
  for (const auto& h : hist) {
    if (h.size() > total.size()) total.resize(h.size(), 0);
    for (std::size_t i = 0; i < h.size(); ++i) total[i] += h[i];
  }
  for (auto c : total) out.reachable_pairs += c;
  out.pmf = normalize(total);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::uint64_t> triangle_counts(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::uint64_t> tri(n, 0);
  std::vector<char> mark(n, 0);
  for (NodeIndex v = 0; v < n; ++v) {
    if (g.degree(v) < 2) continue;
    for (NodeIndex w : g.neighbors(v)) mark[w] = 1;
    std::uint64_t links = 0;
    for (NodeIndex w : g.neighbors(v)) {
      for (NodeIndex x : g.neighbors(w)) links += mark[x];
    }
    for (NodeIndex w : g.neighbors(v)) mark[w] = 0;
    tri[v] = links / 2;
  }
  return tri;
}

}  // namespace

int clustering_bin(std::uint64_t triangles, std::uint64_t degree) {
  const std::uint64_t pairs = degree * (degree - 1);
  const std::uint64_t num = 2 * triangles * kClusteringBins;
  const auto b = static_cast<int>((num + pairs - 1) / pairs) - 1;
  return std::clamp(b, 0, kClusteringBins - 1);
}

double local_clustering(const Graph& g, NodeIndex v) {
  const auto d = g.degree(v);
  if (d < 2) return 0.0;
  std::uint64_t links = 0;
  const auto nb = g.neighbors(v);
  for (std::size_t a = 0; a < nb.size(); ++a) {
    for (std::size_t b = a + 1; b < nb.size(); ++b) links += g.has_edge(nb[a], nb[b]);
  }
  return 2.0 * static_cast<double>(links) / static_cast<double>(d * (d - 1));
}

ClusteringDistribution clustering_distribution(const Graph& g) {
  require_nodes(g);
  const auto tri = triangle_counts(g);
  std::vector<std::uint64_t> counts(kClusteringBins, 0);
  ClusteringDistribution out;
  double sum = 0.0;
  for (NodeIndex v = 0; v < g.num_nodes(); ++v) {
    const std::uint64_t d = g.degree(v);
    if (d < 2) continue;
    ++out.eligible;
    ++counts[clustering_bin(tri[v], d)];
    sum += 2.0 * static_cast<double>(tri[v]) / static_cast<double>(d * (d - 1));
  }
  if (out.eligible) {
    out.pmf = normalize(counts);
    out.mean = sum / static_cast<double>(out.eligible);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::uint32_t> core_numbers(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::uint32_t> deg(n);
  std::size_t max_deg = 0;
  for (NodeIndex i = 0; i < n; ++i) {
    deg[i] = static_cast<std::uint32_t>(g.degree(i));
    max_deg = std::max<std::size_t>(max_deg, deg[i]);
  }
  // Bucket sort by degree, then peel in order (Batagelj-Zaversnik).
  std::vector<std::size_t> bin(max_deg + 2, 0);
  for (auto d : deg) ++bin[d];
  std::size_t start = 0;
  for (auto& b : bin) {
    const auto c = b;
    b = start;
    start += c;
  }
  std::vector<NodeIndex> order(n);
  std::vector<std::size_t> pos(n);
  for (NodeIndex i = 0; i < n; ++i) {
    pos[i] = bin[deg[i]]++;
    order[pos[i]] = i;
  }
  for (std::size_t d = max_deg + 1; d > 0; --d) bin[d] = bin[d - 1];
  bin[0] = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const NodeIndex v = order[i];
    for (NodeIndex u : g.neighbors(v)) {
      if (deg[u] <= deg[v]) continue;
      const auto du = deg[u];
      const std::size_t pu = pos[u];
      const std::size_t pw = bin[du];
      const NodeIndex w = order[pw];
      if (u != w) {
        std::swap(order[pu], order[pw]);
        pos[u] = pw;
        pos[w] = pu;
      }
      ++bin[du];
      --deg[u];
    }
  }
  return deg;
}

KCoreDistribution kcore_distribution(const Graph& g) {
  require_nodes(g);
  const auto core = core_numbers(g);
  std::vector<std::uint64_t> counts;
  KCoreDistribution out;
  for (auto c : core) {
    if (c >= counts.size()) counts.resize(c + 1, 0);
    ++counts[c];
    out.max_core = std::max(out.max_core, c);
  }
  out.pmf = normalize(counts);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Component {
  std::vector<NodeIndex> members;
  std::vector<std::size_t> offsets;
  std::vector<std::uint32_t> adj;  // local indices
};

std::vector<Component> components(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::uint32_t> local(n, std::numeric_limits<std::uint32_t>::max());
  std::vector<Component> out;
  for (NodeIndex s = 0; s < n; ++s) {
    if (local[s] != std::numeric_limits<std::uint32_t>::max()) continue;
    Component c;
    c.members.push_back(s);
    local[s] = 0;
    for (std::size_t h = 0; h < c.members.size(); ++h) {
      for (NodeIndex w : g.neighbors(c.members[h])) {
        if (local[w] != std::numeric_limits<std::uint32_t>::max()) continue;
        local[w] = static_cast<std::uint32_t>(c.members.size());
        c.members.push_back(w);
      }
    }
    c.offsets.push_back(0);
    for (NodeIndex v : c.members) {
      for (NodeIndex w : g.neighbors(v)) c.adj.push_back(local[w]);
      c.offsets.push_back(c.adj.size());
    }
    out.push_back(std::move(c));
  }
  return out;
}

struct ComponentSpectrum {
  std::vector<double> values;  // descending
  Eigen::VectorXd principal;
  double residual = 0.0;
  bool converged = true;
};

ComponentSpectrum dense_spectrum(const Component& c, std::size_t k) {
  const auto n = static_cast<Eigen::Index>(c.members.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (std::size_t p = c.offsets[i]; p < c.offsets[i + 1]; ++p) a(i, c.adj[p]) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  ComponentSpectrum out;
  const auto& ev = es.eigenvalues();
  for (Eigen::Index i = n - 1; i >= 0 && out.values.size() < k; --i) {
    out.values.push_back(ev(i));
  }
  out.principal = es.eigenvectors().col(n - 1);
  out.residual = (a * out.principal - ev(n - 1) * out.principal).norm();
  return out;
}

/// Thick-restart Lanczos with full reorthogonalization. T holds the explicit
/// projection Q^T A Q, so restarted (arrowhead) blocks need no special case.
ComponentSpectrum lanczos_spectrum(const Component& c, std::size_t k,
                                   const EigenOptions& opts) {
  const auto n = static_cast<Eigen::Index>(c.members.size());
  const auto kk = static_cast<Eigen::Index>(std::min<std::size_t>(k, c.members.size()));
  const Eigen::Index mmax = std::min<Eigen::Index>(n, 2 * kk + 50);
  const Eigen::Index keep = std::min<Eigen::Index>(mmax - 1, kk + (mmax - kk) / 2);

  auto matvec = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t p = c.offsets[i]; p < c.offsets[i + 1]; ++p) s += x(c.adj[p]);
      y(i) = s;
    }
  };

  Rng rng(mix64(static_cast<std::uint64_t>(n)) ^ c.members.front());
  auto random_unit = [&](const Eigen::MatrixXd& q, Eigen::Index cols) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.uniform01() - 0.5;
    for (int pass = 0; pass < 2 && cols > 0; ++pass) {
      v -= q.leftCols(cols) * (q.leftCols(cols).transpose() * v);
    }
    return Eigen::VectorXd(v / v.norm());
  };

  Eigen::MatrixXd q(n, mmax + 1);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(mmax + 1, mmax + 1);
  Eigen::Index cols = 0;
  q.col(cols++) = random_unit(q, 0);

  Eigen::VectorXd w(n), h;
  std::size_t iters = 0;
  ComponentSpectrum out;
  while (true) {
    const Eigen::Index j = cols - 1;
    matvec(q.col(j), w);
    h = q.leftCols(cols).transpose() * w;
    w -= q.leftCols(cols) * h;
    const Eigen::VectorXd h2 = q.leftCols(cols).transpose() * w;
    w -= q.leftCols(cols) * h2;
    h += h2;
    t.block(0, j, cols, 1) = h;
    t.block(j, 0, 1, cols) = h.transpose();
    const double beta = w.norm();
    ++iters;

    const bool full = cols == n;
    const bool at_cap = cols == mmax;
    const bool budget = iters >= opts.max_iter;
    if (full || at_cap || budget || (cols >= kk && cols % 10 == 0)) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t.topLeftCorner(cols, cols));
      const auto& theta = es.eigenvalues();
      const auto& s = es.eigenvectors();
      bool ok = cols >= kk;
      for (Eigen::Index i = 0; i < kk && ok; ++i) {
        const Eigen::Index r = cols - 1 - i;
        ok = full || beta * std::abs(s(cols - 1, r)) <= opts.tol;
      }
      if (ok || full || budget) {
        for (Eigen::Index i = 0; i < std::min(kk, cols); ++i) {
          out.values.push_back(theta(cols - 1 - i));
        }
        out.principal = q.leftCols(cols) * s.col(cols - 1);
        out.principal.normalize();
        out.residual = full ? 0.0 : beta * std::abs(s(cols - 1, cols - 1));
        out.converged = ok || full;
        if (full) {
          Eigen::VectorXd y(n);
          matvec(out.principal, y);
          out.residual = (y - theta(cols - 1) * out.principal).norm();
        }
        return out;
      }
      if (at_cap) {
        const Eigen::MatrixXd y = q.leftCols(cols) * s.rightCols(keep);
        q.leftCols(keep) = y;
        t.setZero();
        for (Eigen::Index i = 0; i < keep; ++i) t(i, i) = theta(cols - keep + i);
        cols = keep;
      }
    }
    if (beta <= 1e-10 * std::max(1.0, std::abs(t(j, j)))) {
      q.col(cols) = random_unit(q, cols);
    } else {
      q.col(cols) = w / beta;
    }
    ++cols;
  }
}

}  // namespace

EigenResult adjacency_eigen(const Graph& g, const EigenOptions& opts) {
  require_nodes(g);
  if (opts.k == 0) throw InvalidArgument("eigenvalue count must be >= 1");
  EigenResult out;
  out.principal.assign(g.num_nodes(), 0.0);
  double best = -std::numeric_limits<double>::infinity();
  for (const Component& c : components(g)) {
    ComponentSpectrum cs;
    if (c.members.size() == 1) {
      cs.values = {0.0};
      cs.principal = Eigen::VectorXd::Ones(1);
    } else if (c.members.size() <= opts.dense_limit) {
      cs = dense_spectrum(c, opts.k);
    } else {
      cs = lanczos_spectrum(c, opts.k, opts);
    }
    out.converged = out.converged && cs.converged;
    out.values.insert(out.values.end(), cs.values.begin(), cs.values.end());
    if (cs.values.front() > best + 1e-9) {
      best = cs.values.front();
      std::fill(out.principal.begin(), out.principal.end(), 0.0);
      for (std::size_t i = 0; i < c.members.size(); ++i) {
        out.principal[c.members[i]] = cs.principal(static_cast<Eigen::Index>(i));
      }
      out.principal_residual = cs.residual;
    }
  }
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  if (out.values.size() > opts.k) out.values.resize(opts.k);
  return out;
}

std::vector<double> top_eigenvalues(const Graph& g, std::size_t k, double tol) {
  EigenOptions opts;
  opts.k = k;
  opts.tol = tol;
  auto r = adjacency_eigen(g, opts);
  if (!r.converged) {
    throw ConvergenceError("eigenvalues did not converge within " +
                           std::to_string(opts.max_iter) + " iterations");
  }
  return r.values;
}

std::vector<double> magnitudes_descending(std::span<const double> x,
                                          std::size_t k) {
  std::vector<double> m(x.size());
  std::transform(x.begin(), x.end(), m.begin(), [](double v) { return std::abs(v); });
  std::sort(m.begin(), m.end(), std::greater<>());
  if (m.size() > k) m.resize(k);
  return m;
}

std::vector<double> network_values(const Graph& g, std::size_t k) {
  auto r = adjacency_eigen(g);
  if (!r.converged) throw ConvergenceError("principal eigenvector did not converge");
  return magnitudes_descending(r.principal, k);
}

double estimate_average_degree(const Graph& g, std::span<const NodeId> sampled) {
  if (sampled.empty()) throw InvalidArgument("empty sampled node set");
  double sum = 0.0;
  for (NodeId id : sampled) sum += static_cast<double>(g.degree(g.index_of(id)));
  return sum / static_cast<double>(sampled.size());
}

// ---------------------------------------------------------------------------

StatisticProfile compute_profile(const Graph& g, const ProfileOptions& opts) {
  require_nodes(g);
  StatisticProfile p;
  p.num_nodes = g.num_nodes();
  p.num_edges = g.num_edges();
  p.degree = degree_distribution(g);
  p.path_length = path_length_distribution(g, opts.path);
  p.clustering = clustering_distribution(g);
  p.kcore = kcore_distribution(g);
  const auto eig = adjacency_eigen(g, opts.eigen);
  p.eigenvalues = eig.values;
  p.network_values = magnitudes_descending(eig.principal, opts.network_values);
  p.eigen_converged = eig.converged;
  return p;
}

namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw IoError("cannot write " + p.string());
  out << std::setprecision(17);
  return out;
}

void write_dist(const std::filesystem::path& p, const char* key,
                const Distribution& d) {
  auto out = open_out(p);
  out << key << ",p\n";
  for (const auto& [k, v] : d) out << k << ',' << v << '\n';
}

void write_vector(const std::filesystem::path& p, const std::vector<double>& v) {
  auto out = open_out(p);
  out << "rank,value\n";
  for (std::size_t i = 0; i < v.size(); ++i) out << i + 1 << ',' << v[i] << '\n';
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw IoError("cannot open " + p.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

double to_double(const std::string& s, const std::filesystem::path& p) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad number '" + s + "' in " + p.string(), 0);
  }
}

Distribution read_dist(const std::filesystem::path& p) {
  Distribution d;
  for (const auto& row : read_csv(p)) {
    if (row.size() < 2) throw ParseError("short row in " + p.string(), 0);
    d[static_cast<std::int64_t>(to_double(row[0], p))] = to_double(row[1], p);
  }
  return d;
}

std::vector<double> read_vector(const std::filesystem::path& p) {
  std::vector<double> v;
  for (const auto& row : read_csv(p)) {
    if (row.size() < 2) throw ParseError("short row in " + p.string(), 0);
    v.push_back(to_double(row[1], p));
  }
  return v;
}

}  // namespace

void write_profile(const StatisticProfile& p, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  write_dist(dir / "degree.csv", "degree", p.degree);
  write_dist(dir / "path_length.csv", "hops", p.path_length.pmf);
  write_dist(dir / "clustering.csv", "bin", p.clustering.pmf);
  write_dist(dir / "kcore.csv", "core", p.kcore.pmf);
  write_vector(dir / "eigenvalues.csv", p.eigenvalues);
  write_vector(dir / "network_values.csv", p.network_values);

  json m;
  m["num_nodes"] = p.num_nodes;
  m["num_edges"] = p.num_edges;
  m["path_length"] = {{"exact", p.path_length.exact},
                      {"sources", p.path_length.sources},
                      {"reachable_pairs", p.path_length.reachable_pairs}};
  m["clustering"] = {{"bins", kClusteringBins},
                     {"eligible_nodes", p.clustering.eligible},
                     {"mean", p.clustering.mean}};
  m["kcore"] = {{"max_core", p.kcore.max_core}};
  m["eigen_converged"] = p.eigen_converged;
  m["files"] = {"degree.csv", "path_length.csv", "clustering.csv", "kcore.csv",
                "eigenvalues.csv", "network_values.csv"};
  auto out = open_out(dir / "manifest.json");
  out << m.dump(2) << '\n';
}

StatisticProfile read_profile(const std::filesystem::path& dir) {
  const auto mpath = dir / "manifest.json";
  std::ifstream in(mpath);
  if (!in) throw IoError("cannot open profile manifest " + mpath.string());
  StatisticProfile p;
  try {
    const json m = json::parse(in);
    p.num_nodes = m.at("num_nodes").get<std::size_t>();
    p.num_edges = m.at("num_edges").get<std::size_t>();
    p.path_length.exact = m.at("path_length").at("exact").get<bool>();
    p.path_length.sources = m.at("path_length").at("sources").get<std::size_t>();
    p.path_length.reachable_pairs =
        m.at("path_length").at("reachable_pairs").get<std::uint64_t>();
    p.clustering.eligible = m.at("clustering").at("eligible_nodes").get<std::size_t>();
    p.clustering.mean = m.at("clustering").at("mean").get<double>();
    p.kcore.max_core = m.at("kcore").at("max_core").get<std::uint32_t>();
    p.eigen_converged = m.at("eigen_converged").get<bool>();
  } catch (const json::exception& e) {
    throw ParseError("bad profile manifest " + mpath.string() + ": " + e.what(), 0);
  }
  p.degree = read_dist(dir / "degree.csv");
  p.path_length.pmf = read_dist(dir / "path_length.csv");
  p.clustering.pmf = read_dist(dir / "clustering.csv");
  p.kcore.pmf = read_dist(dir / "kcore.csv");
  p.eigenvalues = read_vector(dir / "eigenvalues.csv");
  p.network_values = read_vector(dir / "network_values.csv");
  return p;
}

}  // namespace gsample

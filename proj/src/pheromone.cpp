#include "tlbs/pheromone.hpp"

#include <algorithm>

#include "tlbs/scenario.hpp"

namespace tlbs {

EdgeSet::EdgeSet(std::vector<Edge> edges) : edges_(std::move(edges)) { finalize(); }

void EdgeSet::insert(int u, int v) { edges_.push_back(Edge::of(u, v)); }

void EdgeSet::finalize() {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool EdgeSet::contains(Edge e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

PheromoneMatrix::PheromoneMatrix(int cell_count, double tau0)
    : n_(cell_count), tau0_(tau0), rows_(cell_count), default_row_(cell_count, tau0) {
  if (cell_count <= 0) throw DomainError("pheromone matrix needs at least one cell");
  if (!(tau0 > 0.0)) throw DomainError("tau0 must be > 0");
}

double PheromoneMatrix::at(int u, int v) const { return rows_[u] ? rows_[u][v] : tau0_; }

const double* PheromoneMatrix::row(int u) const {
  return rows_[u] ? rows_[u].get() : default_row_.data();
}

double* PheromoneMatrix::mutable_row(int u) {
  if (!rows_[u]) {
    rows_[u] = std::make_unique<double[]>(n_);
    std::fill_n(rows_[u].get(), n_, tau0_);
  }
  return rows_[u].get();
}

void PheromoneMatrix::set(int u, int v, double value) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw DomainError("pheromone index out of range");
  if (!(value >= 0.0)) throw DomainError("pheromone intensity must be >= 0");
  const double prev = at(u, v);
  mutable_row(u)[v] = value;
  mutable_row(v)[u] = value;
  const Edge e = Edge::of(u, v);
  if (prev == tau0_ && value != tau0_) {
    active_.push_back(e);
  } else if (prev != tau0_ && value == tau0_) {
    active_.erase(std::find(active_.begin(), active_.end(), e));
  }
}

void PheromoneMatrix::scale(double factor) {
  if (!(factor > 0.0)) throw DomainError("scale factor must be > 0");
  tau0_ *= factor;
  std::fill(default_row_.begin(), default_row_.end(), tau0_);
  for (auto& r : rows_) {
    if (!r) continue;
    for (int i = 0; i < n_; ++i) r[i] *= factor;
  }
}

void PheromoneMatrix::evaporate(const EdgeSet& used, double rho) {
  const double keep = 1.0 - rho;
  std::size_t out = 0;
  for (std::size_t i = 0; i < active_.size(); ++i) {
    const Edge e = active_[i];
    double* ra = rows_[e.a].get();
    double* rb = rows_[e.b].get();
    double v = ra[e.b];
    if (v > 0.0 && !used.contains(e)) {
      v = tau0_ + keep * (v - tau0_);
      ra[e.b] = v;
      rb[e.a] = v;
    }
    if (v != tau0_) active_[out++] = e;
  }
  active_.resize(out);
}

void PheromoneMatrix::reinforce(const EdgeSet& used, double rho, double deposit) {
  for (const Edge& e : used.edges()) {
    set(e.a, e.b, (1.0 - rho) * at(e.a, e.b) + rho * deposit);
  }
}

double reinforcement_deposit(double q1, double q2, double max_len_m, int nc) {
  if (!(max_len_m > 0.0)) throw DomainError("reinforcement needs max_len_m > 0");
  return q1 / max_len_m + (nc > 0 ? q2 / nc : 0.0);
}

void evaporate(PheromoneMatrix& tau, const EdgeSet& used_edges, double rho) {
  tau.evaporate(used_edges, rho);
}

void reinforce(PheromoneMatrix& tau, const EdgeSet& used_edges, double rho, double q1,
               double q2, double max_len_m, int nc) {
  tau.reinforce(used_edges, rho, reinforcement_deposit(q1, q2, max_len_m, nc));
}

}  // namespace tlbs

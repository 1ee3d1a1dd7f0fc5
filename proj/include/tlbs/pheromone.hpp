#pragma once

#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace tlbs {

/// Undirected edge between two linear cell ids, stored with first < second.
struct Edge {
  int a = 0;
  int b = 0;
  static Edge of(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Sorted, duplicate-free edge list.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::vector<Edge> edges);
  void insert(int u, int v);
  /// Sorts and removes duplicates; call before contains().
  void finalize();
  bool contains(Edge e) const;
  std::span<const Edge> edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

 private:
  std::vector<Edge> edges_;
};

/// Symmetric trail intensities over cell pairs. Pairs never written read as
/// tau0. Rows are materialized on first write so that row(i) is a contiguous
/// array indexed by cell id; only edges whose value differs from tau0 are
/// tracked for evaporation.
class PheromoneMatrix {
 public:
  PheromoneMatrix(int cell_count, double tau0);

  int cell_count() const { return n_; }
  double tau0() const { return tau0_; }
  double at(int u, int v) const;
  void set(int u, int v, double value);
  /// Row of intensities from cell u to every cell.
  const double* row(int u) const;
  /// Number of edges currently holding a value other than tau0.
  std::size_t stored_edges() const { return active_.size(); }
  /// Multiplies every intensity and tau0 by `factor`.
  void scale(double factor);

  /// tau <- (1 - rho) tau + rho tau0 on every stored edge with tau > 0 that is
  /// not in `used`. Written as tau0 + (1 - rho)(tau - tau0) so tau0 is an
  /// exact fixed point.
  void evaporate(const EdgeSet& used, double rho);
  /// tau <- (1 - rho) tau + rho deposit on every edge of `used`.
  void reinforce(const EdgeSet& used, double rho, double deposit);

 private:
  double* mutable_row(int u);

  int n_;
  double tau0_;
  std::vector<std::unique_ptr<double[]>> rows_;
  std::vector<double> default_row_;
  std::vector<Edge> active_;
};

/// Deposit Q1 / max_len + Q2 / nc, with the station term taken as 0 when
/// nc == 0. Throws DomainError when max_len_m <= 0.
double reinforcement_deposit(double q1, double q2, double max_len_m, int nc);

void evaporate(PheromoneMatrix& tau, const EdgeSet& used_edges, double rho);
void reinforce(PheromoneMatrix& tau, const EdgeSet& used_edges, double rho, double q1,
               double q2, double max_len_m, int nc);

}  // namespace tlbs

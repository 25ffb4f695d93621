// Primal network simplex for the dense transportation problem.
//
// Spanning-tree bookkeeping (parent / thread / succ_num / last_succ) follows
// the classic strongly-feasible-tree formulation used by LEMON, specialised
// to uncapacitated arcs: arcs are either in the tree or at their lower
// bound, so the "upper" state never occurs. Flows are integers; costs and
// potentials are doubles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "vlasov1d/errors.hpp"
#include "vlasov1d/wasserstein.hpp"

namespace vlasov1d {
namespace {

constexpr int kDirUp = 1;
constexpr int kDirDown = -1;
constexpr long long kInf = std::numeric_limits<long long>::max();

class TransportSimplex {
 public:
  TransportSimplex(const std::vector<long long>& supply,
                   const std::vector<long long>& demand,
                   const std::vector<double>& cost)
      : m_(supply.size()),
        n_(demand.size()),
        node_num_(static_cast<int>(m_ + n_)),
        real_arcs_(m_ * n_),
        cost_(cost) {
    const std::size_t all_arcs = real_arcs_ + static_cast<std::size_t>(node_num_);
    flow_.assign(all_arcs, 0);
    state_.assign(real_arcs_, 1);
    art_cost_.assign(static_cast<std::size_t>(node_num_), 0.0);
    art_source_.assign(static_cast<std::size_t>(node_num_), 0);
    art_target_.assign(static_cast<std::size_t>(node_num_), 0);

    const std::size_t nodes = static_cast<std::size_t>(node_num_) + 1;
    pi_.assign(nodes, 0.0);
    parent_.assign(nodes, -1);
    pred_.assign(nodes, -1);
    thread_.assign(nodes, 0);
    rev_thread_.assign(nodes, 0);
    succ_num_.assign(nodes, 0);
    last_succ_.assign(nodes, 0);
    pred_dir_.assign(nodes, 0);

    double max_cost = 0.0;
    for (double c : cost_) {
      max_cost = std::max(max_cost, std::abs(c));
    }
    const double art = (max_cost + 1.0) * node_num_;
    // Reduced costs carry rounding proportional to the potentials, which are
    // bounded by the artificial cost.
    tolerance_ = std::max(1e-14, 64.0 * std::numeric_limits<double>::epsilon() * art);

    block_size_ = std::max<std::size_t>(
        static_cast<std::size_t>(std::sqrt(static_cast<double>(real_arcs_))), 10);

    root_ = node_num_;
    parent_[root_] = -1;
    pred_[root_] = -1;
    thread_[root_] = 0;
    rev_thread_[0] = root_;
    succ_num_[root_] = node_num_ + 1;
    last_succ_[root_] = root_ - 1;
    pi_[root_] = 0.0;

    for (int u = 0; u < node_num_; ++u) {
      const std::size_t e = real_arcs_ + static_cast<std::size_t>(u);
      parent_[u] = root_;
      pred_[u] = static_cast<long long>(e);
      thread_[u] = u + 1;
      rev_thread_[u + 1] = u;
      succ_num_[u] = 1;
      last_succ_[u] = u;
      const long long sup = node_supply(u, supply, demand);
      if (sup >= 0) {
        pred_dir_[u] = kDirUp;
        pi_[u] = 0.0;
        art_source_[u] = u;
        art_target_[u] = root_;
        flow_[e] = sup;
        art_cost_[u] = 0.0;
      } else {
        pred_dir_[u] = kDirDown;
        pi_[u] = art;
        art_source_[u] = root_;
        art_target_[u] = u;
        flow_[e] = -sup;
        art_cost_[u] = art;
      }
    }
  }

  std::size_t run() {
    std::size_t pivots = 0;
    while (find_entering_arc()) {
      find_join_node();
      if (!find_leaving_arc()) {
        throw PreconditionError("transport simplex: unbounded cycle");
      }
      change_flow();
      update_tree_structure();
      update_potential();
      ++pivots;
    }
    for (int u = 0; u < node_num_; ++u) {
      if (flow_[real_arcs_ + static_cast<std::size_t>(u)] != 0) {
        throw PreconditionError("transport simplex: infeasible (unbalanced) problem");
      }
    }
    return pivots;
  }

  const std::vector<long long>& flow() const { return flow_; }
  const std::vector<double>& potentials() const { return pi_; }

 private:
  static long long node_supply(int u, const std::vector<long long>& supply,
                               const std::vector<long long>& demand) {
    const auto su = static_cast<std::size_t>(u);
    return su < supply.size() ? supply[su] : -demand[su - supply.size()];
  }

  int source(long long e) const {
    const auto ue = static_cast<std::size_t>(e);
    return ue < real_arcs_ ? static_cast<int>(ue / n_)
                           : art_source_[ue - real_arcs_];
  }
  int target(long long e) const {
    const auto ue = static_cast<std::size_t>(e);
    return ue < real_arcs_ ? static_cast<int>(m_ + ue % n_)
                           : art_target_[ue - real_arcs_];
  }
  double arc_cost(long long e) const {
    const auto ue = static_cast<std::size_t>(e);
    return ue < real_arcs_ ? cost_[ue] : art_cost_[ue - real_arcs_];
  }

  // Block search pivot rule over the real arcs.
  bool find_entering_arc() {
    double min = -tolerance_;
    std::size_t cnt = block_size_;
    bool found = false;
    std::size_t e = next_arc_;
    std::size_t i = e / n_;
    std::size_t j = e % n_;
    for (std::size_t scanned = 0; scanned < real_arcs_; ++scanned) {
      if (state_[e]) {
        const double c = cost_[e] + pi_[i] - pi_[m_ + j];
        if (c < min) {
          min = c;
          in_arc_ = static_cast<long long>(e);
          found = true;
        }
      }
      ++e;
      if (++j == n_) {
        j = 0;
        ++i;
      }
      if (e == real_arcs_) {
        e = 0;
        i = 0;
        j = 0;
      }
      if (--cnt == 0) {
        if (found) {
          next_arc_ = e;
          return true;
        }
        cnt = block_size_;
      }
    }
    if (found) {
      next_arc_ = e;
    }
    return found;
  }

  void find_join_node() {
    int u = source(in_arc_);
    int v = target(in_arc_);
    while (u != v) {
      if (succ_num_[u] < succ_num_[v]) {
        u = parent_[u];
      } else {
        v = parent_[v];
      }
    }
    join_ = u;
  }

  bool find_leaving_arc() {
    // The entering arc is always at its lower bound.
    first_ = source(in_arc_);
    second_ = target(in_arc_);
    delta_ = kInf;
    int result = 0;
    for (int u = first_; u != join_; u = parent_[u]) {
      if (pred_dir_[u] != kDirUp) {
        continue;
      }
      const long long d = flow_[static_cast<std::size_t>(pred_[u])];
      if (d < delta_) {
        delta_ = d;
        u_out_ = u;
        result = 1;
      }
    }
    for (int u = second_; u != join_; u = parent_[u]) {
      if (pred_dir_[u] != kDirDown) {
        continue;
      }
      const long long d = flow_[static_cast<std::size_t>(pred_[u])];
      if (d <= delta_) {
        delta_ = d;
        u_out_ = u;
        result = 2;
      }
    }
    if (result == 1) {
      u_in_ = first_;
      v_in_ = second_;
    } else {
      u_in_ = second_;
      v_in_ = first_;
    }
    return result != 0;
  }

  void change_flow() {
    if (delta_ > 0) {
      const long long val = delta_;
      flow_[static_cast<std::size_t>(in_arc_)] += val;
      for (int u = source(in_arc_); u != join_; u = parent_[u]) {
        flow_[static_cast<std::size_t>(pred_[u])] -= pred_dir_[u] * val;
      }
      for (int u = target(in_arc_); u != join_; u = parent_[u]) {
        flow_[static_cast<std::size_t>(pred_[u])] += pred_dir_[u] * val;
      }
    }
    state_[static_cast<std::size_t>(in_arc_)] = 0;
    const long long out = pred_[u_out_];
    if (static_cast<std::size_t>(out) < real_arcs_) {
      state_[static_cast<std::size_t>(out)] = 1;
    }
  }

  void update_tree_structure() {
    const int old_rev_thread = rev_thread_[u_out_];
    const int old_succ_num = succ_num_[u_out_];
    const int old_last_succ = last_succ_[u_out_];
    v_out_ = parent_[u_out_];

    if (u_in_ == u_out_) {
      parent_[u_in_] = v_in_;
      pred_[u_in_] = in_arc_;
      pred_dir_[u_in_] = u_in_ == source(in_arc_) ? kDirUp : kDirDown;

      if (thread_[v_in_] != u_out_) {
        int after = thread_[old_last_succ];
        thread_[old_rev_thread] = after;
        rev_thread_[after] = old_rev_thread;
        after = thread_[v_in_];
        thread_[v_in_] = u_out_;
        rev_thread_[u_out_] = v_in_;
        thread_[old_last_succ] = after;
        rev_thread_[after] = old_last_succ;
      }
    } else {
      // When old_rev_thread == v_in, join and v_out coincide.
      const int thread_continue =
          old_rev_thread == v_in_ ? thread_[old_last_succ] : thread_[v_in_];

      // Re-hang the stem nodes between u_in and u_out.
      int stem = u_in_;
      int par_stem = v_in_;
      int next_stem;
      int last = last_succ_[u_in_];
      int before;
      int after = thread_[last];
      thread_[v_in_] = u_in_;
      dirty_revs_.clear();
      dirty_revs_.push_back(v_in_);
      while (stem != u_out_) {
        next_stem = parent_[stem];
        thread_[last] = next_stem;
        dirty_revs_.push_back(last);

        before = rev_thread_[stem];
        thread_[before] = after;
        rev_thread_[after] = before;

        parent_[stem] = par_stem;
        par_stem = stem;
        stem = next_stem;

        last = last_succ_[stem] == last_succ_[par_stem] ? rev_thread_[par_stem]
                                                        : last_succ_[stem];
        after = thread_[last];
      }
      parent_[u_out_] = par_stem;
      thread_[last] = thread_continue;
      rev_thread_[thread_continue] = last;
      last_succ_[u_out_] = last;

      if (old_rev_thread != v_in_) {
        thread_[old_rev_thread] = after;
        rev_thread_[after] = old_rev_thread;
      }

      for (int u : dirty_revs_) {
        rev_thread_[thread_[u]] = u;
      }

      int tmp_sc = 0;
      const int tmp_ls = last_succ_[u_out_];
      for (int u = u_out_, p = parent_[u]; u != u_in_; u = p, p = parent_[u]) {
        pred_[u] = pred_[p];
        pred_dir_[u] = -pred_dir_[p];
        tmp_sc += succ_num_[u] - succ_num_[p];
        succ_num_[u] = tmp_sc;
        last_succ_[p] = tmp_ls;
      }
      pred_[u_in_] = in_arc_;
      pred_dir_[u_in_] = u_in_ == source(in_arc_) ? kDirUp : kDirDown;
      succ_num_[u_in_] = old_succ_num;
    }

    const int up_limit_out = last_succ_[join_] == v_in_ ? join_ : -1;
    const int last_succ_out = last_succ_[u_out_];
    for (int u = v_in_; u != -1 && last_succ_[u] == v_in_; u = parent_[u]) {
      last_succ_[u] = last_succ_out;
    }

    if (join_ != old_rev_thread && v_in_ != old_rev_thread) {
      for (int u = v_out_; u != up_limit_out && last_succ_[u] == old_last_succ;
           u = parent_[u]) {
        last_succ_[u] = old_rev_thread;
      }
    } else if (last_succ_out != old_last_succ) {
      for (int u = v_out_; u != up_limit_out && last_succ_[u] == old_last_succ;
           u = parent_[u]) {
        last_succ_[u] = last_succ_out;
      }
    }

    for (int u = v_in_; u != join_; u = parent_[u]) {
      succ_num_[u] += old_succ_num;
    }
    for (int u = v_out_; u != join_; u = parent_[u]) {
      succ_num_[u] -= old_succ_num;
    }
  }

  void update_potential() {
    const double sigma =
        pi_[v_in_] - pi_[u_in_] - pred_dir_[u_in_] * arc_cost(in_arc_);
    const int end = thread_[last_succ_[u_in_]];
    for (int u = u_in_; u != end; u = thread_[u]) {
      pi_[u] += sigma;
    }
  }

  std::size_t m_;
  std::size_t n_;
  int node_num_;
  std::size_t real_arcs_;
  const std::vector<double>& cost_;

  std::vector<long long> flow_;
  std::vector<std::uint8_t> state_;  // 1: at lower bound, 0: in tree
  std::vector<double> art_cost_;
  std::vector<int> art_source_;
  std::vector<int> art_target_;

  std::vector<double> pi_;
  std::vector<int> parent_;
  std::vector<long long> pred_;
  std::vector<int> thread_;
  std::vector<int> rev_thread_;
  std::vector<int> succ_num_;
  std::vector<int> last_succ_;
  std::vector<int> pred_dir_;
  std::vector<int> dirty_revs_;

  int root_ = 0;
  double tolerance_ = 0.0;
  std::size_t block_size_ = 10;
  std::size_t next_arc_ = 0;

  long long in_arc_ = 0;
  int join_ = 0;
  int u_in_ = 0;
  int v_in_ = 0;
  int u_out_ = 0;
  int v_out_ = 0;
  int first_ = 0;
  int second_ = 0;
  long long delta_ = 0;
};

}  // namespace

IntegerTransportResult solve_transport(const std::vector<long long>& supply,
                                       const std::vector<long long>& demand,
                                       const std::vector<double>& cost) {
  if (supply.empty() || demand.empty()) {
    throw InvalidArgument("solve_transport: empty side");
  }
  if (cost.size() != supply.size() * demand.size()) {
    throw InvalidArgument("solve_transport: cost matrix has the wrong size");
  }
  const long long s = std::accumulate(supply.begin(), supply.end(), 0LL);
  const long long d = std::accumulate(demand.begin(), demand.end(), 0LL);
  if (s != d) {
    throw PreconditionError("solve_transport: unbalanced supplies and demands");
  }
  for (long long v : supply) {
    if (v < 0) throw InvalidArgument("solve_transport: negative supply");
  }
  for (long long v : demand) {
    if (v < 0) throw InvalidArgument("solve_transport: negative demand");
  }

  TransportSimplex simplex(supply, demand, cost);
  IntegerTransportResult out;
  out.pivots = simplex.run();
  const std::size_t m = supply.size();
  const std::size_t n = demand.size();
  out.flow.assign(simplex.flow().begin(),
                  simplex.flow().begin() + static_cast<std::ptrdiff_t>(m * n));
  // Reduced costs are c_ij + row_i - col_j; at optimum none is negative.
  const auto& pi = simplex.potentials();
  out.row_potential.assign(pi.begin(), pi.begin() + static_cast<std::ptrdiff_t>(m));
  out.col_potential.assign(pi.begin() + static_cast<std::ptrdiff_t>(m),
                           pi.begin() + static_cast<std::ptrdiff_t>(m + n));
  double total = 0.0;
  for (std::size_t e = 0; e < m * n; ++e) {
    if (out.flow[e] != 0) {
      total += static_cast<double>(out.flow[e]) * cost[e];
    }
  }
  out.cost = total;
  return out;
}

}  // namespace vlasov1d

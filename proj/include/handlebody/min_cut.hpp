#pragma once

// Exact minimizer for energies of binary variables built from unary costs,
// submodular pairwise costs, and hard one-sided implications, by reduction
// to a minimum s-t cut (Dinic's algorithm).

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

namespace hb::detail {

class BinaryEnergy {
  public:
    // cap on any single finite cost; arcs of this weight are never cut
    static constexpr long long kHard = 1LL << 60;

    explicit BinaryEnergy(int vars) : n_(vars), adj_(vars + 2) {}

    // cost added when the variable is assigned 0 / 1
    void add_unary(int v, long long cost0, long long cost1) {
        if (cost1 > cost0)
            add_arc(src(), v, cost1 - cost0);
        else if (cost0 > cost1)
            add_arc(v, snk(), cost0 - cost1);
    }

    // cost added exactly for the joint assignment (x_u, x_v) == (0, 1)
    void add_zero_one(int u, int v, long long cost) {
        if (cost < 0) throw std::logic_error("pair term is not submodular");
        if (cost > 0) add_arc(u, v, cost);
    }

    // forbid the joint assignment (x_u, x_v) == (valU, valV), valU != valV
    void add_forbid(int u, int valU, int v, int valV) {
        if (valU == valV) throw std::logic_error("forbidden pair is uniform");
        if (valU == 1)
            add_arc(v, u, kHard);
        else
            add_arc(u, v, kHard);
    }

    // an assignment attaining the minimum total energy
    std::vector<char> minimize() {
        while (bfs()) {
            iter_.assign(adj_.size(), 0);
            while (push(src(), kHard) > 0) {
            }
        }
        bfs();  // final levels mark the source side of the cut
        std::vector<char> x(n_);
        for (int v = 0; v < n_; ++v) x[v] = level_[v] < 0 ? 1 : 0;
        return x;
    }

  private:
    struct Arc {
        int to;
        long long cap;
    };

    int src() const { return n_; }
    int snk() const { return n_ + 1; }

    void add_arc(int from, int to, long long cap) {
        adj_[from].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({to, cap});
        adj_[to].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({from, 0});
    }

    bool bfs() {
        level_.assign(adj_.size(), -1);
        std::queue<int> q;
        level_[src()] = 0;
        q.push(src());
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int id : adj_[v])
                if (arcs_[id].cap > 0 && level_[arcs_[id].to] < 0) {
                    level_[arcs_[id].to] = level_[v] + 1;
                    q.push(arcs_[id].to);
                }
        }
        return level_[snk()] >= 0;
    }

    long long push(int v, long long limit) {
        if (v == snk() || limit == 0) return limit;
        long long sent = 0;
        for (int& i = iter_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
            Arc& a = arcs_[adj_[v][i]];
            if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
            long long got = push(a.to, std::min(limit - sent, a.cap));
            if (got <= 0) continue;
            a.cap -= got;
            arcs_[adj_[v][i] ^ 1].cap += got;
            sent += got;
            if (sent == limit) return sent;
        }
        level_[v] = -1;
        return sent;
    }

    int n_;
    std::vector<std::vector<int>> adj_;
    std::vector<Arc> arcs_;
    std::vector<int> level_;
    std::vector<int> iter_;
};

}  // namespace hb::detail

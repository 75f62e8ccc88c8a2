#include "phc/diagram_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

namespace phc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Pt {
    double birth;
    double death;  // finite, cap already substituted
};

double pers_half(const Pt& p) { return (p.death - p.birth) * 0.5; }

double dist_linf(const Pt& a, const Pt& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

// Points of one dimension with +inf deaths replaced by the cap (never below
// the birth, so persistence stays nonnegative).
std::vector<Pt> capped_points(const PersistenceDiagram& d, int dim, double cap) {
    std::vector<Pt> out;
    for (const auto& p : d.points) {
        if (p.dim != dim) continue;
        double death = std::isfinite(p.death) ? p.death : std::max(cap, p.birth);
        out.push_back({p.birth, death});
    }
    return out;
}

// Kuhn-Munkres in the Jonker-Volgenant row-addition form for k rows and
// m >= k columns; costs may be negative. Returns the optimal row -> column
// assignment. O(k^2 m).
std::vector<int> hungarian(int k, int m, const std::vector<double>& cost) {
    std::vector<double> u(k + 1, 0.0), v(m + 1, 0.0);
    std::vector<int> p(m + 1, 0), way(m + 1, 0);
    for (int i = 1; i <= k; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(m + 1, kInf);
        std::vector<char> used(m + 1, 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = 0;
            double delta = kInf;
            for (int j = 1; j <= m; ++j) {
                if (used[j]) continue;
                double cur = cost[static_cast<std::size_t>(i0 - 1) * m + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> assign(k, -1);
    for (int j = 1; j <= m; ++j) {
        if (p[j]) assign[p[j] - 1] = j - 1;
    }
    return assign;
}

// Exact W1 between the capped point sets of one dimension.
//
// Every point either matches a point of the other diagram or its diagonal
// projection, so the optimum is
//   sum of all pers/2  +  min over partial matchings of
//   sum (d(x, y) - pers(x)/2 - pers(y)/2).
// Only the smaller side needs assignment rows; the larger side is reduced
// further by keeping at most k copies of duplicated points (a matching can
// use at most k of them, and copies are interchangeable). The reduction is
// algebraically the standard diagonal-augmented assignment problem.
double w1_dim(const std::vector<Pt>& d1, const std::vector<Pt>& d2, int dim, Matching* matching) {
    const bool swapped = d1.size() > d2.size();
    const std::vector<Pt>& small = swapped ? d2 : d1;
    const std::vector<Pt>& large = swapped ? d1 : d2;
    const int k = static_cast<int>(small.size());

    double base = 0.0;
    for (const auto& p : small) base += pers_half(p);
    for (const auto& p : large) base += pers_half(p);

    auto emit = [&](const Pt& a, int adim, const Pt* b) {
        if (!matching) return;
        std::optional<PersistencePoint> pa = PersistencePoint{a.birth, a.death, adim};
        std::optional<PersistencePoint> pb;
        if (b) pb = PersistencePoint{b->birth, b->death, adim};
        if (swapped) matching->pairs.emplace_back(std::move(pb), std::move(pa));
        else matching->pairs.emplace_back(std::move(pa), std::move(pb));
    };
    auto emit_large_diag = [&](const Pt& b) {
        if (!matching) return;
        std::optional<PersistencePoint> pb = PersistencePoint{b.birth, b.death, dim};
        if (swapped) matching->pairs.emplace_back(std::move(pb), std::nullopt);
        else matching->pairs.emplace_back(std::nullopt, std::move(pb));
    };

    if (k == 0) {
        for (const auto& p : large) emit_large_diag(p);
        return base;
    }

    // Duplicate collapse on the large side.
    std::vector<Pt> kept;
    std::vector<int> extra_copies;  // per kept point, collapsed duplicates
    {
        std::vector<int> idx(large.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            if (large[a].birth != large[b].birth) return large[a].birth < large[b].birth;
            return large[a].death < large[b].death;
        });
        for (std::size_t i = 0; i < idx.size();) {
            std::size_t j = i;
            while (j < idx.size() && large[idx[j]].birth == large[idx[i]].birth &&
                   large[idx[j]].death == large[idx[i]].death) {
                ++j;
            }
            int copies = static_cast<int>(j - i);
            int keep = std::min(copies, k);
            for (int t = 0; t < keep; ++t) kept.push_back(large[idx[i]]);
            extra_copies.resize(kept.size(), 0);
            extra_copies.back() = copies - keep;
            i = j;
        }
    }
    const int n = static_cast<int>(kept.size());

    // k rows (small side), n real columns plus k free diagonal columns.
    const int m = n + k;
    std::vector<double> cost(static_cast<std::size_t>(k) * m, 0.0);
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < n; ++i) {
            cost[static_cast<std::size_t>(j) * m + i] =
                dist_linf(small[j], kept[i]) - pers_half(small[j]) - pers_half(kept[i]);
        }
    }
    std::vector<int> assign = hungarian(k, m, cost);

    double reduced = 0.0;
    std::vector<char> large_used(n, 0);
    for (int j = 0; j < k; ++j) {
        int col = assign[j];
        if (col < n) {
            reduced += cost[static_cast<std::size_t>(j) * m + col];
            large_used[col] = 1;
            emit(small[j], dim, &kept[col]);
        } else {
            emit(small[j], dim, nullptr);
        }
    }
    for (int i = 0; i < n; ++i) {
        if (!large_used[i]) emit_large_diag(kept[i]);
        for (int t = 0; t < extra_copies[i]; ++t) emit_large_diag(kept[i]);
    }
    return base + reduced;
}

// Hopcroft-Karp maximum bipartite matching size. adj[l] lists right
// neighbors of left node l.
int hopcroft_karp(int nl, int nr, const std::vector<std::vector<int>>& adj) {
    const int kUnmatched = -1;
    std::vector<int> match_l(nl, kUnmatched), match_r(nr, kUnmatched), dist(nl);
    int matching = 0;
    for (;;) {
        std::queue<int> q;
        for (int l = 0; l < nl; ++l) {
            if (match_l[l] == kUnmatched) {
                dist[l] = 0;
                q.push(l);
            } else {
                dist[l] = -1;
            }
        }
        bool reachable = false;
        while (!q.empty()) {
            int l = q.front();
            q.pop();
            for (int r : adj[l]) {
                int l2 = match_r[r];
                if (l2 == kUnmatched) {
                    reachable = true;
                } else if (dist[l2] < 0) {
                    dist[l2] = dist[l] + 1;
                    q.push(l2);
                }
            }
        }
        if (!reachable) break;
        std::vector<char> visited(nl, 0);
        std::function<bool(int)> try_augment = [&](int l) -> bool {
            visited[l] = 1;
            for (int r : adj[l]) {
                int l2 = match_r[r];
                if (l2 == kUnmatched ||
                    (!visited[l2] && dist[l2] == dist[l] + 1 && try_augment(l2))) {
                    match_l[l] = r;
                    match_r[r] = l;
                    return true;
                }
            }
            return false;
        };
        int before = matching;
        for (int l = 0; l < nl; ++l) {
            if (match_l[l] == kUnmatched && try_augment(l)) ++matching;
        }
        if (matching == before) break;
    }
    return matching;
}

// Can every point with pers/2 > t on side `must` be matched to some point of
// `other` within distance t?
bool covers(const std::vector<Pt>& must, const std::vector<Pt>& other, double t) {
    std::vector<int> big;
    for (std::size_t i = 0; i < must.size(); ++i) {
        if (pers_half(must[i]) > t) big.push_back(static_cast<int>(i));
    }
    if (big.empty()) return true;
    if (big.size() > other.size()) return false;
    std::vector<std::vector<int>> adj(big.size());
    for (std::size_t l = 0; l < big.size(); ++l) {
        for (std::size_t r = 0; r < other.size(); ++r) {
            if (dist_linf(must[big[l]], other[r]) <= t) adj[l].push_back(static_cast<int>(r));
        }
    }
    return hopcroft_karp(static_cast<int>(big.size()), static_cast<int>(other.size()), adj) ==
           static_cast<int>(big.size());
}

// A matching of cost <= t exists iff the high-persistence points of each
// side can be covered within distance t. Two one-sided covers suffice: by
// Mendelsohn-Dulmage, matchings saturating each set separately combine into
// one saturating both.
bool bottleneck_feasible(const std::vector<Pt>& a, const std::vector<Pt>& b, double t) {
    return covers(a, b, t) && covers(b, a, t);
}

double bottleneck_dim(const std::vector<Pt>& a, const std::vector<Pt>& b) {
    std::vector<double> candidates{0.0};
    for (const auto& p : a) candidates.push_back(pers_half(p));
    for (const auto& p : b) candidates.push_back(pers_half(p));
    for (const auto& pa : a) {
        for (const auto& pb : b) candidates.push_back(dist_linf(pa, pb));
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::size_t lo = 0, hi = candidates.size() - 1;
    if (bottleneck_feasible(a, b, candidates[lo])) return candidates[lo];
    // invariant: lo infeasible, hi feasible (the largest candidate always is)
    while (hi - lo > 1) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (bottleneck_feasible(a, b, candidates[mid])) hi = mid;
        else lo = mid;
    }
    return candidates[hi];
}

double shared_cap(const PersistenceDiagram& a, const PersistenceDiagram& b) {
    return std::max(a.cap, b.cap);
}

}  // namespace

double wasserstein1(const PersistenceDiagram& a, const PersistenceDiagram& b) {
    double cap = shared_cap(a, b);
    double total = 0.0;
    for (int dim = 0; dim <= 1; ++dim) {
        total += w1_dim(capped_points(a, dim, cap), capped_points(b, dim, cap), dim, nullptr);
    }
    return total;
}

Matching wasserstein1_matching(const PersistenceDiagram& a, const PersistenceDiagram& b) {
    double cap = shared_cap(a, b);
    Matching matching;
    for (int dim = 0; dim <= 1; ++dim) {
        matching.total_cost +=
            w1_dim(capped_points(a, dim, cap), capped_points(b, dim, cap), dim, &matching);
    }
    return matching;
}

double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b) {
    double cap = shared_cap(a, b);
    double worst = 0.0;
    for (int dim = 0; dim <= 1; ++dim) {
        worst = std::max(worst, bottleneck_dim(capped_points(a, dim, cap), capped_points(b, dim, cap)));
    }
    return worst;
}

double betti_distance(const PersistenceDiagram& a, const PersistenceDiagram& b, double p) {
    if (p < 1.0) throw std::invalid_argument("betti_distance requires p >= 1");
    double cap = shared_cap(a, b);
    double total = 0.0;
    for (int dim = 0; dim <= 1; ++dim) {
        auto ca = betti_curve(a, dim);
        auto cb = betti_curve(b, dim);
        if (ca.empty() && cb.empty()) continue;

        double lo = kInf;
        for (const auto& pt : a.points) {
            if (pt.dim == dim) lo = std::min(lo, pt.birth);
        }
        for (const auto& pt : b.points) {
            if (pt.dim == dim) lo = std::min(lo, pt.birth);
        }
        if (!(lo < cap)) continue;

        // merged breakpoint sweep over [lo, cap]
        std::vector<double> cuts{lo, cap};
        for (const auto& [t, c] : ca) {
            if (t > lo && t < cap) cuts.push_back(t);
        }
        for (const auto& [t, c] : cb) {
            if (t > lo && t < cap) cuts.push_back(t);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

        double accum = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double diff = std::abs(betti_at(ca, cuts[i]) - betti_at(cb, cuts[i]));
            if (diff > 0.0) accum += std::pow(diff, p) * (cuts[i + 1] - cuts[i]);
        }
        total += std::pow(accum, 1.0 / p);
    }
    return total;
}

}  // namespace phc

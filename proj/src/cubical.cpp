#include "phc/cubical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace phc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Union-find keyed by pixel index, with an optional extra node. Roots carry
// the sorted position of the pixel that created the component, which encodes
// age: smaller position = older component (value first, then pixel index).
struct DisjointSet {
    std::vector<int> parent;
    std::vector<int> birth_pos;  // per root: creation position in the sorted order

    explicit DisjointSet(std::size_t n) : parent(n, -1), birth_pos(n, -1) {}

    int find(int v) {
        int root = v;
        while (parent[root] != root) root = parent[root];
        while (parent[v] != root) {
            int next = parent[v];
            parent[v] = root;
            v = next;
        }
        return root;
    }

    void make_set(int v, int pos) {
        parent[v] = v;
        birth_pos[v] = pos;
    }

    bool active(int v) const { return parent[v] >= 0; }

    // Merge, keeping the older root. Returns the dying root or -1 if the two
    // sets were already one.
    int unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return -1;
        if (birth_pos[b] < birth_pos[a]) std::swap(a, b);
        parent[b] = a;
        return b;
    }
};

}  // namespace

// Two union-find sweeps give the full diagram of the sublevel filtration.
//
// H0 runs over pixels in increasing value order with 8-connectivity, which is
// the adjacency pixels get when lower cells take the min over incident
// pixels: two diagonal pixels share a vertex whose value is at most both.
// When a pixel's insertion merges two components, the younger one dies at
// that value (elder rule, ties by pixel order).
//
// H1 comes from the complement. A loop of pixels <= alpha encloses a region
// of pixels > alpha, and that region is a bounded 4-connected component of
// the strict superlevel set (4 is dual to 8). Processing pixels in
// decreasing order with a virtual outside node, a merge at value v kills the
// component whose maximum is u, and that is exactly the loop born at v and
// filled at u.
PersistenceDiagram sublevel_diagram(const GrayImage& img) {
    const int w = img.width, h = img.height;
    const std::size_t n = img.pixels.size();
    for (double v : img.pixels) {
        if (!std::isfinite(v)) throw std::invalid_argument("sublevel_diagram: non-finite pixel value");
    }

    PersistenceDiagram diagram;

    // Pairs with persistence at the floating-point noise floor of the value
    // range are zero-persistence for every downstream purpose and are
    // dropped along with the exact ones. Integer-valued images are
    // unaffected: their smallest nonzero persistence is 1.
    const auto [lo_it, hi_it] = std::minmax_element(img.pixels.begin(), img.pixels.end());
    const double eps = 1e-12 * std::max(1.0, *hi_it - *lo_it);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (img.pixels[a] != img.pixels[b]) return img.pixels[a] < img.pixels[b];
        return a < b;
    });

    // H0: ascending, 8-connected.
    {
        DisjointSet ds(n);
        std::vector<double> birth_value(n, 0.0);
        for (std::size_t pos = 0; pos < n; ++pos) {
            int p = order[pos];
            double v = img.pixels[p];
            ds.make_set(p, static_cast<int>(pos));
            birth_value[p] = v;
            int py = p / w, px = p % w;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    int qy = py + dy, qx = px + dx;
                    if (qx < 0 || qx >= w || qy < 0 || qy >= h) continue;
                    int q = qy * w + qx;
                    if (!ds.active(q)) continue;
                    int dead = ds.unite(p, q);
                    if (dead >= 0 && v - birth_value[dead] > eps) {
                        diagram.points.push_back({birth_value[dead], v, 0});
                    }
                }
            }
        }
        // the surviving component never dies
        diagram.points.push_back({img.pixels[order[0]], kInf, 0});
    }

    // H1: descending, 4-connected, with the unbounded face as node n.
    {
        DisjointSet ds(n + 1);
        std::vector<double> max_value(n + 1, kInf);
        ds.make_set(static_cast<int>(n), -1);  // outside is oldest
        std::vector<int> rorder(order.rbegin(), order.rend());
        for (std::size_t pos = 0; pos < n; ++pos) {
            int p = rorder[pos];
            double v = img.pixels[p];
            ds.make_set(p, static_cast<int>(pos));
            max_value[p] = v;
            int py = p / w, px = p % w;
            auto touch = [&](int q) {
                if (!ds.active(q)) return;
                int dead = ds.unite(p, q);
                if (dead >= 0 && max_value[dead] - v > eps) {
                    diagram.points.push_back({v, max_value[dead], 1});
                }
            };
            if (px > 0) touch(p - 1);
            if (px + 1 < w) touch(p + 1);
            if (py > 0) touch(p - w);
            if (py + 1 < h) touch(p + w);
            if (px == 0 || px == w - 1 || py == 0 || py == h - 1) touch(static_cast<int>(n));
        }
    }

    std::sort(diagram.points.begin(), diagram.points.end(), [](const PersistencePoint& a, const PersistencePoint& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
    return diagram;
}

std::vector<std::pair<double, int>> betti_curve(const PersistenceDiagram& d, int dim) {
    // +1 at births, -1 at finite deaths, accumulated over sorted thresholds.
    std::vector<std::pair<double, int>> events;
    for (const auto& p : d.points) {
        if (p.dim != dim) continue;
        events.emplace_back(p.birth, +1);
        if (std::isfinite(p.death)) events.emplace_back(p.death, -1);
    }
    std::sort(events.begin(), events.end());

    std::vector<std::pair<double, int>> curve;
    int count = 0;
    for (std::size_t i = 0; i < events.size();) {
        double t = events[i].first;
        while (i < events.size() && events[i].first == t) {
            count += events[i].second;
            ++i;
        }
        if (!curve.empty() && curve.back().second == count) continue;
        curve.emplace_back(t, count);
    }
    return curve;
}

int betti_at(const std::vector<std::pair<double, int>>& curve, double alpha) {
    int value = 0;
    for (const auto& [t, c] : curve) {
        if (t > alpha) break;
        value = c;
    }
    return value;
}

std::string diagram_to_csv(const PersistenceDiagram& d) {
    std::string out = "dim,birth,death\n";
    char buf[96];
    for (const auto& p : d.points) {
        if (std::isfinite(p.death)) {
            std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", p.dim, p.birth, p.death);
        } else {
            std::snprintf(buf, sizeof(buf), "%d,%.17g,+inf\n", p.dim, p.birth);
        }
        out += buf;
    }
    return out;
}

}  // namespace phc

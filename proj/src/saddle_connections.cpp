#include "teich/saddle_connections.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <thread>

#include "teich/error.hpp"

namespace teich {

namespace {

struct Step {
  int land_class = -1;
  int next_start = -1;
  std::vector<std::int32_t> lower, upper;
};

struct Direction {
  IVec d;
  double length;   // deformed length of the primitive vector
  int max_steps;   // floor(L / length)
  std::size_t cost;
};

int at(const Perm& p, int i) { return p[static_cast<std::size_t>(i)]; }

// One primitive displacement from every possible start square.
std::vector<Step> step_map(const Origami& x, IVec d) {
  const int n = x.n();
  const auto& h = x.sigma_h();
  const auto& v = x.sigma_v();
  const auto& vinv = x.sigma_v_inv();
  std::vector<Step> steps(static_cast<std::size_t>(n));
  auto bottom = [](std::vector<std::int32_t>& c, int sq, int k) { c[static_cast<std::size_t>(sq)] += k; };
  auto left = [n](std::vector<std::int32_t>& c, int sq, int k) {
    c[static_cast<std::size_t>(n + sq)] += k;
  };

  // Crossing order of the interior grid lines: true = vertical line
  // (move right), false = horizontal line (move up or down).
  std::vector<char> right_moves;
  const std::int64_t p0 = d.p, q0 = std::abs(d.q);
  if (p0 > 0 && q0 > 0) {
    assert(gcd64(p0, q0) == 1);
    std::int64_t a = 1, b = 1;
    while (a < p0 || b < q0) {
      // Coprime p0, q0: a q0 == b p0 never happens strictly inside.
      if (b >= q0 || (a < p0 && a * q0 < b * p0)) {
        right_moves.push_back(1);
        ++a;
      } else {
        right_moves.push_back(0);
        ++b;
      }
    }
  }
  const std::size_t m = right_moves.size();

  for (int s0 = 0; s0 < n; ++s0) {
    Step st;
    st.lower.assign(static_cast<std::size_t>(2 * n), 0);
    st.upper.assign(static_cast<std::size_t>(2 * n), 0);
    if (d.q == 0) {  // (1, 0)
      bottom(st.lower, s0, 1);
      bottom(st.upper, s0, 1);
      st.next_start = at(h, s0);
      st.land_class = x.class_of(st.next_start);
    } else if (d.p == 0) {  // (0, 1)
      left(st.lower, s0, 1);
      left(st.upper, s0, 1);
      st.next_start = at(v, s0);
      st.land_class = x.class_of(st.next_start);
    } else if (d.q > 0) {
      // Start at the bottom-left corner of s0, end at a top-right corner.
      int cur = s0;
      for (std::size_t k = 0; k <= m; ++k) {
        const bool from_left = k == 0 || right_moves[k - 1];
        const bool from_below = k == 0 || !right_moves[k - 1];
        const bool exit_up = k == m || !right_moves[k];
        const bool exit_right = k == m || right_moves[k];
        if (from_left) bottom(st.lower, cur, 1);
        if (exit_up) left(st.lower, at(h, cur), 1);
        if (from_below) left(st.upper, cur, 1);
        if (exit_right) bottom(st.upper, at(v, cur), 1);
        if (k < m) cur = right_moves[k] ? at(h, cur) : at(v, cur);
      }
      st.next_start = at(v, at(h, cur));
      st.land_class = x.class_of(st.next_start);
    } else {
      // Start at the top-left corner of s0, end at a bottom-right corner.
      int cur = s0;
      for (std::size_t k = 0; k <= m; ++k) {
        const bool from_left = k == 0 || right_moves[k - 1];
        const bool from_above = k == 0 || !right_moves[k - 1];
        const bool exit_down = k == m || !right_moves[k];
        const bool exit_right = k == m || right_moves[k];
        if (from_above) left(st.lower, cur, -1);
        if (exit_right) bottom(st.lower, cur, 1);
        if (from_left) bottom(st.upper, at(v, cur), 1);
        if (exit_down) left(st.upper, at(h, cur), -1);
        if (k < m) cur = right_moves[k] ? at(h, cur) : at(vinv, cur);
      }
      st.land_class = x.class_of(at(h, cur));
      st.next_start = at(vinv, at(h, cur));
    }
    steps[static_cast<std::size_t>(s0)] = std::move(st);
  }
  return steps;
}

void trace_direction(const Origami& x, const Direction& dir, std::vector<SaddleConnection>& out) {
  const auto steps = step_map(x, dir.d);
  const int n = x.n();
  const auto& D = x.deformation();
  for (int c = 0; c < static_cast<int>(x.vertex_classes().size()); ++c) {
    const auto& vc = x.vertex_classes()[static_cast<std::size_t>(c)];
    if (!vc.marked) continue;
    for (int sq : vc.squares) {
      // Rays in the fourth quadrant leave from top-left corners.
      const int start = dir.d.q < 0 ? at(x.sigma_v_inv(), sq) : sq;
      std::vector<std::int32_t> lower(static_cast<std::size_t>(2 * n), 0), upper = lower;
      int s = start;
      for (int k = 1; k <= dir.max_steps; ++k) {
        const Step& st = steps[static_cast<std::size_t>(s)];
        for (std::size_t e = 0; e < lower.size(); ++e) {
          lower[e] += st.lower[e];
          upper[e] += st.upper[e];
        }
        if (x.is_marked(st.land_class)) {
          SaddleConnection g;
          g.start_class = c;
          g.end_class = st.land_class;
          g.direction = dir.d;
          g.steps = k;
          g.holonomy = {k * dir.d.p, k * dir.d.q};
          g.start_square = start;
          const auto w = D.apply(static_cast<double>(g.holonomy.p), static_cast<double>(g.holonomy.q));
          g.hx = w[0];
          g.hy = w[1];
          g.length = std::hypot(w[0], w[1]);
          g.origami_id = x.combinatorial_id();
          g.lower = std::move(lower);
          g.upper = std::move(upper);
          out.push_back(std::move(g));
          break;
        }
        s = st.next_start;
      }
    }
  }
}

bool connection_less(const SaddleConnection& a, const SaddleConnection& b) {
  if (a.length != b.length) return a.length < b.length;
  if (a.holonomy.p != b.holonomy.p) return a.holonomy.p < b.holonomy.p;
  if (a.holonomy.q != b.holonomy.q) return a.holonomy.q < b.holonomy.q;
  if (a.start_class != b.start_class) return a.start_class < b.start_class;
  return a.start_square < b.start_square;
}

}  // namespace

EnumerationResult enumerate_saddle_connections(const Origami& x, double L,
                                               const EnumerationOptions& opt) {
  if (!(L > 0.0) || !std::isfinite(L)) throw InvalidInput("saddle_connections: L must be positive");
  const auto& D = x.deformation();
  std::size_t rays = 0;
  for (const auto& vc : x.vertex_classes())
    if (vc.marked) rays += vc.squares.size();

  EnumerationResult res;
  std::vector<Direction> dirs;
  bool over = false;
  const std::size_t visited = for_each_lattice_vector(D, L, [&](IVec w) {
    if (over) return;
    if (!(w.p > 0 || (w.p == 0 && w.q > 0))) return;
    if (gcd64(std::abs(w.p), std::abs(w.q)) != 1) return;
    const double len = deformed_length(D, w);
    const int k = static_cast<int>(std::floor(L * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()) / len));
    const std::size_t cost = static_cast<std::size_t>(x.n()) *
                                 static_cast<std::size_t>(std::abs(w.p) + std::abs(w.q)) +
                             rays * static_cast<std::size_t>(std::max(k, 1));
    dirs.push_back({w, len, std::max(k, 1), cost});
    if (dirs.size() > opt.budget) over = true;
  });
  res.work = visited;
  std::sort(dirs.begin(), dirs.end(), [](const Direction& a, const Direction& b) {
    if (a.length != b.length) return a.length < b.length;
    if (a.d.p != b.d.p) return a.d.p < b.d.p;
    return a.d.q < b.d.q;
  });
  // Deterministic budget cut: shortest directions first.
  std::size_t keep = 0;
  for (; keep < dirs.size(); ++keep) {
    if (res.work + dirs[keep].cost > opt.budget) {
      res.complete = false;
      break;
    }
    res.work += dirs[keep].cost;
  }
  if (over) res.complete = false;
  dirs.resize(keep);

  const int threads = std::max(1, std::min<int>(opt.threads, static_cast<int>(dirs.size())));
  std::vector<std::vector<SaddleConnection>> parts(static_cast<std::size_t>(threads));
  auto work = [&](int t) {
    const std::size_t lo = dirs.size() * static_cast<std::size_t>(t) / static_cast<std::size_t>(threads);
    const std::size_t hi = dirs.size() * static_cast<std::size_t>(t + 1) / static_cast<std::size_t>(threads);
    for (std::size_t k = lo; k < hi; ++k) trace_direction(x, dirs[k], parts[static_cast<std::size_t>(t)]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  for (auto& p : parts)
    for (auto& g : p) res.connections.push_back(std::move(g));
  std::sort(res.connections.begin(), res.connections.end(), connection_less);
  return res;
}

std::vector<SaddleConnection> saddle_connections(const Origami& x, double L,
                                                 const EnumerationOptions& opt) {
  auto res = enumerate_saddle_connections(x, L, opt);
  if (!res.complete)
    throw ResourceError("saddle_connections: budget of " + std::to_string(opt.budget) +
                            " work units exhausted at L = " + std::to_string(L),
                        res.connections.size());
  return std::move(res.connections);
}

double length_under(const GroupElement& m, const SaddleConnection& g) {
  return deformed_length(m, g.holonomy);
}

}  // namespace teich

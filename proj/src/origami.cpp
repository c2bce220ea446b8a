#include "teich/origami.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <numeric>
#include <sstream>

#include "teich/error.hpp"

namespace teich {

namespace {

Perm inverse_of(const Perm& p) {
  Perm inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return inv;
}

void check_perm(const Perm& p, const char* name) {
  std::vector<char> seen(p.size(), 0);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || seen[static_cast<std::size_t>(x)])
      throw InvalidInput(std::string("origami: ") + name + " is not a permutation");
    seen[static_cast<std::size_t>(x)] = 1;
  }
}

bool transitive(const Perm& h, const Perm& v) {
  std::vector<char> seen(h.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int j : {h[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i)]}) {
      if (!seen[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = 1;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == h.size();
}

std::uint64_t fnv1a(const Perm& h, const Perm& v) {
  std::uint64_t x = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t w) {
    for (int k = 0; k < 8; ++k) {
      x ^= (w >> (8 * k)) & 0xffU;
      x *= 1099511628211ULL;
    }
  };
  mix(h.size());
  for (int e : h) mix(static_cast<std::uint64_t>(e));
  for (int e : v) mix(static_cast<std::uint64_t>(e));
  return x;
}

int at(const Perm& p, int i) { return p[static_cast<std::size_t>(i)]; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Origami Origami::build(Perm sigma_h, Perm sigma_v, const GroupElement& deformation) {
  if (sigma_h.empty()) throw InvalidInput("origami: need at least one square");
  if (sigma_h.size() != sigma_v.size()) throw InvalidInput("origami: permutations differ in size");
  check_perm(sigma_h, "sigma_h");
  check_perm(sigma_v, "sigma_v");
  if (!transitive(sigma_h, sigma_v))
    throw InvalidInput("origami: permutations do not act transitively (disconnected surface)");
  if (!(deformation.det() > 0.0) || !std::isfinite(deformation.det()))
    throw InvalidInput("origami: deformation must have positive determinant");

  Origami x;
  x.h_ = std::move(sigma_h);
  x.v_ = std::move(sigma_v);
  x.hinv_ = inverse_of(x.h_);
  x.vinv_ = inverse_of(x.v_);
  x.deformation_ = deformation;
  x.id_ = fnv1a(x.h_, x.v_);

  // Turning once around the bottom-left corner of i visits the left, the
  // lower-left and the lower neighbours and comes back to the square
  // sigma_v sigma_h sigma_v^-1 sigma_h^-1 (i).
  const std::size_t n = x.h_.size();
  x.corner_class_.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (x.corner_class_[i] >= 0) continue;
    VertexClass vc;
    int j = static_cast<int>(i);
    do {
      x.corner_class_[static_cast<std::size_t>(j)] = static_cast<int>(x.classes_.size());
      vc.squares.push_back(j);
      j = at(x.v_, at(x.h_, at(x.vinv_, at(x.hinv_, j))));
    } while (j != static_cast<int>(i));
    vc.kappa = static_cast<int>(vc.squares.size());
    x.classes_.push_back(std::move(vc));
  }
  const int V = static_cast<int>(x.classes_.size());
  // V - n = 2 - 2g.
  x.genus_ = (2 - V + static_cast<int>(n)) / 2;
  // On a torus every vertex is regular; all of them are marked so that the
  // singular set is nonempty.
  for (auto& vc : x.classes_) vc.marked = x.genus_ == 1 ? true : vc.kappa > 1;
  int excess = 0;
  for (const auto& vc : x.classes_) excess += vc.kappa - 1;
  if (excess != 2 * x.genus_ - 2 || (2 - V + static_cast<int>(n)) % 2 != 0)
    throw InvalidInput("origami: inconsistent stratum data");
  return x;
}

std::vector<int> Origami::kappa() const {
  std::vector<int> k;
  for (const auto& vc : classes_)
    if (vc.marked) k.push_back(vc.kappa);
  std::sort(k.begin(), k.end(), std::greater<>());
  return k;
}

int Origami::num_marked() const {
  return static_cast<int>(std::count_if(classes_.begin(), classes_.end(),
                                        [](const VertexClass& vc) { return vc.marked; }));
}

Origami Origami::apply(const GroupElement& m) const {
  if (!(m.det() > 0.0)) throw InvalidInput("apply_element: det must be positive");
  Origami y = *this;
  y.deformation_ = m * deformation_;
  return y;
}

Origami apply_element(const Origami& x, const GroupElement& m) { return x.apply(m); }

std::string Origami::describe() const {
  return "sigma_h=" + format_cycles(h_) + " sigma_v=" + format_cycles(v_);
}

Perm parse_cycles(std::string_view cycles, int n) {
  if (n < 1) throw InvalidInput("origami: square count must be positive");
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::string_view s = trim(cycles);
  while (!s.empty()) {
    if (s.front() != '(') throw InvalidInput("origami: expected '(' in cycle list");
    const auto close = s.find(')');
    if (close == std::string_view::npos) throw InvalidInput("origami: unbalanced parenthesis");
    std::string_view body = s.substr(1, close - 1);
    std::vector<int> cyc;
    while (true) {
      body = trim(body);
      if (body.empty()) break;
      if (body.front() == ',') {
        body.remove_prefix(1);
        continue;
      }
      int value = 0;
      const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
      if (ec != std::errc()) throw InvalidInput("origami: bad integer in cycle");
      if (value < 1 || value > n) throw InvalidInput("origami: cycle entry out of range");
      if (used[static_cast<std::size_t>(value - 1)]) throw InvalidInput("origami: repeated cycle entry");
      used[static_cast<std::size_t>(value - 1)] = 1;
      cyc.push_back(value - 1);
      body.remove_prefix(static_cast<std::size_t>(ptr - body.data()));
    }
    for (std::size_t k = 0; k < cyc.size(); ++k)
      p[static_cast<std::size_t>(cyc[k])] = cyc[(k + 1) % cyc.size()];
    s = trim(s.substr(close + 1));
  }
  return p;
}

std::string format_cycles(const Perm& p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    do {
      seen[j] = 1;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
      j = static_cast<std::size_t>(p[j]);
    } while (j != i);
    out += ')';
  }
  return out;
}

Origami parse_origami(std::string_view text) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto semi = text.find(';', start);
    fields.push_back(trim(text.substr(start, semi == std::string_view::npos ? semi : semi - start)));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  if (fields.size() < 3 || fields.size() > 4)
    throw InvalidInput("origami: expected 'n; sigma_h; sigma_v[; a b c d]'");
  int n = 0;
  const auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), n);
  if (ec != std::errc() || ptr != fields[0].data() + fields[0].size() || n < 1)
    throw InvalidInput("origami: bad square count");
  GroupElement D;
  if (fields.size() == 4 && !fields[3].empty()) {
    std::istringstream is{std::string(fields[3])};
    double m[4];
    for (double& e : m)
      if (!(is >> e)) throw InvalidInput("origami: deformation needs four numbers");
    std::string rest;
    if (is >> rest) throw InvalidInput("origami: trailing text after deformation");
    D = {m[0], m[1], m[2], m[3]};
  }
  return Origami::build(parse_cycles(fields[1], n), parse_cycles(fields[2], n), D);
}

namespace origamis {
Origami torus() { return Origami::build({0}, {0}); }
Origami l_shape() { return Origami::build({1, 0, 2}, {2, 1, 0}); }
}  // namespace origamis

}  // namespace teich

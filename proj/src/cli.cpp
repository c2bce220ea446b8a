#include "teich/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "teich/cocycle.hpp"
#include "teich/dynamics.hpp"
#include "teich/error.hpp"
#include "teich/finsler.hpp"
#include "teich/origami.hpp"
#include "teich/output.hpp"
#include "teich/saddle_connections.hpp"
#include "teich/specfit.hpp"
#include "teich/spherical.hpp"
#include "teich/toy_operators.hpp"
#include "teich/transforms.hpp"

namespace teich::cli {

namespace {

using out::Cell;
using out::Table;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format = "csv";
  double tol = 0.0;
  int threads = 1;
  std::size_t budget = 50'000'000;
  bool seed_given = false;
  bool tol_given = false;
  EnumerationOptions enumeration() const { return {budget, threads}; }
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(trim(cur));
  return parts;
}

double parse_real(const std::string& text, const std::string& what) {
  const std::string s = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidInput(what + ": not a number: '" + text + "'");
  }
  if (used != s.size()) throw InvalidInput(what + ": not a number: '" + text + "'");
  return v;
}

// "0.5", "2i", "-i", "0.5+2i", "1e-3-4.5i".
cplx parse_complex(const std::string& text, const std::string& what) {
  const std::string s = trim(text);
  if (s.empty()) throw InvalidInput(what + ": empty complex number");
  if (s.back() != 'i') return {parse_real(s, what), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split_at = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  const std::string re = split_at == std::string::npos ? "" : body.substr(0, split_at);
  const std::string im = split_at == std::string::npos ? body : body.substr(split_at);
  double imag = 0.0;
  if (im.empty() || im == "+") imag = 1.0;
  else if (im == "-") imag = -1.0;
  else imag = parse_real(im, what);
  return {re.empty() ? 0.0 : parse_real(re, what), imag};
}

std::vector<double> parse_reals(const std::string& text, const std::string& what) {
  std::vector<double> v;
  for (const auto& p : split(text, ',')) v.push_back(parse_real(p, what));
  if (v.empty()) throw InvalidInput(what + ": empty list");
  return v;
}

std::vector<cplx> parse_complexes(const std::string& text, const std::string& what) {
  std::vector<cplx> v;
  for (const auto& p : split(text, ',')) v.push_back(parse_complex(p, what));
  if (v.empty()) throw InvalidInput(what + ": empty list");
  return v;
}

// "s:w,s:w"
std::vector<std::pair<double, double>> parse_pairs(const std::string& text, const std::string& what) {
  std::vector<std::pair<double, double>> v;
  for (const auto& p : split(text, ',')) {
    const auto colon = p.find(':');
    if (colon == std::string::npos) throw InvalidInput(what + ": expected value:weight, got '" + p + "'");
    v.emplace_back(parse_real(p.substr(0, colon), what), parse_real(p.substr(colon + 1), what));
  }
  return v;
}

GroupElement parse_matrix(const std::string& text, const std::string& what) {
  const auto v = parse_reals(text, what);
  if (v.size() != 4) throw InvalidInput(what + ": expected four entries a,b,c,d");
  return {v[0], v[1], v[2], v[3]};
}

std::vector<double> sweep(double t0, double t1, double dt) {
  if (!(dt > 0.0) || !(t1 >= t0)) throw InvalidInput("time sweep: need dt > 0 and t1 >= t0");
  std::vector<double> g;
  const auto n = static_cast<long>(std::floor((t1 - t0) / dt + 1e-9));
  for (long k = 0; k <= n; ++k) g.push_back(t0 + static_cast<double>(k) * dt);
  return g;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Origami record from a file (comment lines start with '#') or inline text.
Origami load_origami(const std::string& file, const std::string& inline_text, const std::string& deform) {
  if (file.empty() == inline_text.empty())
    throw UsageError("give exactly one of --file and --origami");
  std::string text;
  if (!file.empty()) {
    std::istringstream is(read_file(file));
    std::string line;
    while (std::getline(is, line)) {
      const std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      text += t + " ";
    }
  } else {
    text = inline_text;
  }
  Origami x = parse_origami(text);
  if (!deform.empty()) x = x.apply(parse_matrix(deform, "--deform"));
  return x;
}

// Diagonalizable toy with well separated eigenvalues in Re < 0.
struct Toy {
  toy::ToyOperator L;
  Eigen::VectorXcd eig;
  toy::ToyOperator V, Vinv;
};

Toy random_toy(std::uint64_t seed, int n) {
  if (n < 1 || n > toy::kMaxDim) throw InvalidInput("toy: size must lie in 1..64");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Toy t;
  t.eig.resize(n);
  for (int k = 0; k < n; ++k) t.eig(k) = cplx{-0.5 - 0.6 * k + 0.1 * u(rng), 0.8 * u(rng)};
  t.V = toy::ToyOperator::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.V(i, j) += 0.4 * cplx{u(rng), u(rng)};
  t.Vinv = t.V.inverse();
  t.L = t.V * t.eig.asDiagonal() * t.Vinv;
  return t;
}

Cocycle make_cocycle(const Origami& x, const std::string& kind, const Globals& g) {
  if (kind == "tautological") return tautological(x);
  if (kind == "geodesic") return tangent_cocycle(x, flow_tangent(FlowKind::geodesic));
  if (kind == "horocycle") return tangent_cocycle(x, flow_tangent(FlowKind::horocycle));
  if (kind == "opp-horocycle") return tangent_cocycle(x, flow_tangent(FlowKind::opp_horocycle));
  if (kind == "rotation") return tangent_cocycle(x, flow_tangent(FlowKind::rotation));
  CocycleKind ck;
  if (kind == "random-real") ck = CocycleKind::real;
  else if (kind == "random-imag") ck = CocycleKind::imaginary;
  else if (kind == "random-complex") ck = CocycleKind::complex;
  else throw UsageError("unknown cocycle '" + kind + "'");
  if (!g.seed_given) throw UsageError("--seed is required for random cocycles");
  std::mt19937_64 rng(g.seed);
  return random_closed_cocycle(x, rng, ck);
}

std::int64_t i64(std::size_t v) { return static_cast<std::int64_t>(v); }

transforms::SpectralAtoms make_atoms(const std::string& text) {
  std::vector<transforms::Atom> atoms;
  for (const auto& [s, w] : parse_pairs(text, "--atoms")) atoms.push_back({s, w});
  return transforms::SpectralAtoms(atoms);
}

// Two named columns of a CSV file with a header row; '#' lines skipped.
std::pair<std::vector<double>, std::vector<double>> read_series(const std::string& path,
                                                                const std::string& tcol,
                                                                const std::string& ycol) {
  std::istringstream is(read_file(path));
  std::string line;
  std::vector<std::string> header;
  std::vector<double> ts, ys;
  std::size_t ti = 0, yi = 0;
  while (std::getline(is, line)) {
    const std::string tl = trim(line);
    if (tl.empty() || tl[0] == '#') continue;
    const auto cells = split(tl, ',');
    if (header.empty()) {
      header = cells;
      const auto ft = std::find(header.begin(), header.end(), tcol);
      const auto fy = std::find(header.begin(), header.end(), ycol);
      if (ft == header.end() || fy == header.end())
        throw InvalidInput("columns '" + tcol + "' and '" + ycol + "' not found in " + path);
      ti = static_cast<std::size_t>(ft - header.begin());
      yi = static_cast<std::size_t>(fy - header.begin());
      continue;
    }
    if (cells.size() <= std::max(ti, yi)) throw InvalidInput("short row in " + path);
    ts.push_back(parse_real(cells[ti], path));
    ys.push_back(parse_real(cells[yi], path));
  }
  return {ts, ys};
}

struct Leaf {
  CLI::App* app = nullptr;
  std::string command;
  std::function<Table()> action;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"teichlab: spherical functions, transforms and square-tiled surface experiments",
               "teichlab"};
  app.option_defaults()->always_capture_default();
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_option("--seed", g.seed, "seed for stochastic commands");
  app.add_option("--out", g.out_path, "output path (default: stdout)");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", g.tol, "tolerance override");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--budget", g.budget, "enumeration work budget");

  std::vector<Leaf> leaves;
  auto group = [&](const std::string& name, const std::string& desc) {
    auto* s = app.add_subcommand(name, desc);
    s->require_subcommand(1);
    return s;
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
    auto* s = parent ? parent->add_subcommand(name, desc) : app.add_subcommand(name, desc);
    leaves.push_back({s, parent ? parent->get_name() + " " + name : name, {}});
    return &leaves.back();
  };
  leaves.reserve(32);

  // Origami input is shared by every origami and flow command.
  std::string file, origami_text, deform;
  auto origami_opts = [&](CLI::App* a) {
    a->add_option("--file", file, "origami record file");
    a->add_option("--origami", origami_text, "inline record 'n; sigma_h; sigma_v[; a b c d]'");
    a->add_option("--deform", deform, "extra deformation a,b,c,d applied on the left");
  };
  auto load = [&] { return load_origami(file, origami_text, deform); };
  auto require_seed = [&](const std::string& what) {
    if (!g.seed_given) throw UsageError(what + ": --seed is required");
  };

  auto* sph = group("spherical", "spherical functions");
  {
    struct O { std::string s, t; double t0 = 0, t1 = 0, dt = 0; };
    auto o = std::make_shared<O>();
    auto* e = leaf(sph, "eval", "phi_s(t)");
    e->app->add_option("--s", o->s, "parameter: 0<s<=1, or v i")->required();
    e->app->add_option("--t", o->t, "comma separated times");
    e->app->add_option("--t0", o->t0, "sweep start");
    e->app->add_option("--t1", o->t1, "sweep end");
    e->app->add_option("--dt", o->dt, "sweep step (0: use --t)");
    e->action = [&, o] {
      const cplx s = parse_complex(o->s, "--s");
      const spherical::SphericalFunction f(spherical::SphericalParam::from(s));
      std::vector<double> ts;
      if (!o->t.empty()) ts = parse_reals(o->t, "--t");
      else if (o->dt > 0.0) ts = sweep(o->t0, o->t1, o->dt);
      else throw UsageError("spherical eval: give --t or a sweep --t0 --t1 --dt");
      Table tb{{"s_re", "s_im", "t", "phi_re", "phi_im"}, {}};
      const double tol = g.tol_given ? g.tol : spherical::kDefaultTol;
      for (double t : ts) {
        const cplx p = f.value(t, tol);
        tb.add({s.real(), s.imag(), t, p.real(), p.imag()});
      }
      return tb;
    };
  }
  {
    struct O { double s = 0; int tmax = 15; };
    auto o = std::make_shared<O>();
    auto* e = leaf(sph, "defect", "e^t |phi_s - c(s) e^{(s-1)t}| at t = 1..tmax");
    e->app->add_option("--s", o->s, "0 < s <= 1")->required();
    e->app->add_option("--tmax", o->tmax, "last integer time");
    e->action = [o] {
      if (o->tmax < 1) throw InvalidInput("--tmax must be >= 1");
      const spherical::SphericalFunction f(spherical::SphericalParam::from({o->s, 0.0}));
      const double c = o->s == 1.0 ? 1.0 : spherical::c_function(o->s).real();
      Table tb{{"t", "phi", "leading", "scaled_defect"}, {}};
      for (int t = 1; t <= o->tmax; ++t) {
        const double td = t;
        tb.add({td, f.value(td).real(), c * std::exp((o->s - 1.0) * td),
                spherical::harish_defect(o->s, std::span<const double>(&td, 1))});
      }
      return tb;
    };
  }
  {
    struct O { double v = 0, delta = 0.1; int tmax = 15; };
    auto o = std::make_shared<O>();
    auto* e = leaf(sph, "ratner", "e^{(1-delta)t} |phi_{iv}(t)| at t = 1..tmax");
    e->app->add_option("--v", o->v, "v >= 0")->required();
    e->app->add_option("--delta", o->delta, "delta in (0,1)");
    e->app->add_option("--tmax", o->tmax, "last integer time");
    e->action = [o] {
      if (o->tmax < 1) throw InvalidInput("--tmax must be >= 1");
      if (!(o->v >= 0.0)) throw DomainError("--v must be >= 0");
      const spherical::SphericalFunction f(spherical::SphericalParam::principal(o->v));
      Table tb{{"t", "phi", "scaled"}, {}};
      for (int t = 1; t <= o->tmax; ++t) {
        const double td = t;
        tb.add({td, f.value(td).real(),
                spherical::ratner_check(o->v, o->delta, std::span<const double>(&td, 1))});
      }
      return tb;
    };
  }
  {
    struct O { std::string s, t; };
    auto o = std::make_shared<O>();
    auto* e = leaf(sph, "casimir", "residual of the radial Casimir equation");
    e->app->add_option("--s", o->s, "spherical parameter")->required();
    e->app->add_option("--t", o->t, "comma separated times >= 0.25")->required();
    e->action = [o] {
      const cplx s = parse_complex(o->s, "--s");
      Table tb{{"t", "residual"}, {}};
      for (double t : parse_reals(o->t, "--t")) tb.add({t, spherical::casimir_residual(s, t)});
      return tb;
    };
  }
  {
    struct O { std::string s; int n = 400; };
    auto o = std::make_shared<O>();
    auto* e = leaf(nullptr, "gamma", "expansion coefficients Gamma_n(s), even n");
    e->app->add_option("--s", o->s, "Re s <= 1")->required();
    e->app->add_option("--n", o->n, "last index");
    e->action = [o] {
      const auto gs = spherical::gamma_coeffs(parse_complex(o->s, "--s"), o->n);
      Table tb{{"n", "re", "im", "root"}, {}};
      for (int n = 0; n <= gs.order(); n += 2) {
        const cplx c = gs.coeffs[static_cast<std::size_t>(n)];
        const double root = n == 0 ? std::abs(c) : std::pow(std::abs(c), 1.0 / n);
        tb.add({std::int64_t{n}, c.real(), c.imag(), root});
      }
      return tb;
    };
  }

  auto* tr = group("transform", "Laplace transforms, continuation, residues, Cauchy atoms");
  {
    struct O { std::string atoms, z; };
    auto o = std::make_shared<O>();
    auto* e = leaf(tr, "laplace", "numerical Laplace transform of sum w phi_s");
    e->app->add_option("--atoms", o->atoms, "s:w,s:w,...")->required();
    e->app->add_option("--z", o->z, "Re z >= 0.05")->required();
    e->action = [o] {
      const auto atoms = make_atoms(o->atoms);
      std::vector<spherical::SphericalFunction> fs;
      double bound = 0.0;
      for (const auto& a : atoms.atoms()) {
        fs.emplace_back(spherical::SphericalParam::from({a.s, 0.0}));
        bound += a.w;
      }
      auto corr = [&](double t) {
        double acc = 0.0;
        for (std::size_t i = 0; i < fs.size(); ++i) acc += atoms.atoms()[i].w * fs[i].value(t).real();
        return acc;
      };
      const cplx z = parse_complex(o->z, "--z");
      const auto r = transforms::laplace_numeric(corr, z, std::max(bound, 1e-300));
      Table tb{{"z_re", "z_im", "value_re", "value_im", "error"}, {}};
      tb.add({z.real(), z.imag(), r.value.real(), r.value.imag(), r.error});
      return tb;
    };
  }
  {
    struct O { std::string atoms, z; double delta = 0.1; };
    auto o = std::make_shared<O>();
    auto* e = leaf(tr, "extend", "continuation A_delta + B_delta");
    e->app->add_option("--atoms", o->atoms, "s:w,s:w,...")->required();
    e->app->add_option("--z", o->z, "Re z > -1 + 2 delta")->required();
    e->app->add_option("--delta", o->delta, "delta in (0, 1/2)");
    e->action = [o] {
      const cplx z = parse_complex(o->z, "--z");
      const auto r = transforms::extended_F_estimate(make_atoms(o->atoms), z, o->delta);
      Table tb{{"z_re", "z_im", "value_re", "value_im", "error"}, {}};
      tb.add({z.real(), z.imag(), r.value.real(), r.value.imag(), r.error});
      return tb;
    };
  }
  {
    struct O { std::string atoms, z0; double radius = 0.05, delta = 0.1; int nodes = 32; };
    auto o = std::make_shared<O>();
    auto* e = leaf(tr, "residue", "contour residue of the continuation");
    e->app->add_option("--atoms", o->atoms, "s:w,s:w,...")->required();
    e->app->add_option("--z0", o->z0, "contour centre")->required();
    e->app->add_option("--radius", o->radius, "contour radius");
    e->app->add_option("--delta", o->delta, "delta in (0, 1/2)");
    e->app->add_option("--nodes", o->nodes, "initial trapezoid nodes");
    e->action = [&, o] {
      const auto atoms = make_atoms(o->atoms);
      const cplx z0 = parse_complex(o->z0, "--z0");
      if (o->nodes < 4) throw InvalidInput("--nodes must be >= 4");
      const auto r = transforms::residue_contour(
          [&](cplx z) { return transforms::extended_F(atoms, z, o->delta); }, z0, o->radius,
          static_cast<std::size_t>(o->nodes), g.tol_given ? g.tol : 1e-10);
      Table tb{{"z0_re", "z0_im", "radius", "residue_re", "residue_im", "error", "nodes"}, {}};
      tb.add({z0.real(), z0.imag(), o->radius, r.value.real(), r.value.imag(), r.error, i64(r.nodes)});
      return tb;
    };
  }
  {
    struct O { std::string atom, x; double uniform = 0, y0 = 0.05; int levels = 12; };
    auto o = std::make_shared<O>();
    auto* e = leaf(tr, "atoms", "atom masses from the Cauchy transform");
    e->app->add_option("--atom", o->atom, "x:mass,... point masses");
    e->app->add_option("--uniform", o->uniform, "mass of a uniform density on [0,1]");
    e->app->add_option("--x", o->x, "comma separated points")->required();
    e->app->add_option("--y0", o->y0, "first rung of the y ladder");
    e->app->add_option("--levels", o->levels, "rungs, halving each time");
    e->action = [o] {
      std::vector<transforms::MeasureOnInterval::PointMass> pm;
      if (!o->atom.empty())
        for (const auto& [x, m] : parse_pairs(o->atom, "--atom")) pm.push_back({x, m});
      transforms::MeasureOnInterval nu(pm, {}, {});
      if (o->uniform != 0.0) nu = nu + transforms::MeasureOnInterval::uniform(o->uniform);
      const auto ladder = transforms::geometric_ladder(o->y0, o->levels);
      Table tb{{"x", "mass"}, {}};
      for (double x : parse_reals(o->x, "--x")) tb.add({x, transforms::atom_mass(nu, x, ladder)});
      return tb;
    };
  }

  auto* ty = group("toy", "finite-dimensional toy operators (random, seeded)");
  {
    struct O { int size = 5; std::string z0 = "0.4", z; };
    auto o = std::make_shared<O>();
    auto* e = leaf(ty, "resolvent", "S(z) against (z - L)^{-1}");
    e->app->add_option("--size", o->size, "dimension");
    e->app->add_option("--z0", o->z0, "base point");
    e->app->add_option("--z", o->z, "comma separated points")->required();
    e->action = [&, o] {
      require_seed("toy resolvent");
      const Toy t = random_toy(g.seed, o->size);
      const cplx z0 = parse_complex(o->z0, "--z0");
      const toy::ToyOperator M = toy::resolvent(t.L, z0);
      Table tb{{"z_re", "z_im", "S00_re", "S00_im", "distance"}, {}};
      for (cplx z : parse_complexes(o->z, "--z")) {
        const auto S = toy::resolvent_S(M, z0, z);
        tb.add({z.real(), z.imag(), S(0, 0).real(), S(0, 0).imag(),
                toy::operator_norm(S - toy::resolvent(t.L, z))});
      }
      return tb;
    };
  }
  {
    struct O { int size = 5, index = 0; double radius = 0.2; };
    auto o = std::make_shared<O>();
    auto* e = leaf(ty, "projection", "Riesz projection onto one eigenvalue");
    e->app->add_option("--size", o->size, "dimension");
    e->app->add_option("--index", o->index, "eigenvalue index");
    e->app->add_option("--radius", o->radius, "contour radius");
    e->action = [&, o] {
      require_seed("toy projection");
      const Toy t = random_toy(g.seed, o->size);
      if (o->index < 0 || o->index >= o->size) throw InvalidInput("--index out of range");
      const cplx lam = t.eig(o->index);
      const auto P = toy::spectral_projection(t.L, lam, o->radius);
      const toy::ToyOperator exact = t.V.col(o->index) * t.Vinv.row(o->index);
      Table tb{{"lambda_re", "lambda_im", "rank", "idempotency", "commutator", "distance"}, {}};
      tb.add({lam.real(), lam.imag(), std::int64_t{toy::numerical_rank(P)},
              toy::operator_norm(P * P - P), toy::operator_norm(t.L * P - P * t.L),
              toy::operator_norm(P - exact)});
      return tb;
    };
  }
  {
    struct O { int size = 5, n = 200; };
    auto o = std::make_shared<O>();
    auto* e = leaf(ty, "specradius", "spectral radius from norms of powers");
    e->app->add_option("--size", o->size, "dimension");
    e->app->add_option("--n", o->n, "largest power");
    e->action = [&, o] {
      require_seed("toy specradius");
      const Toy t = random_toy(g.seed, o->size);
      Table tb{{"n", "estimate", "exact"}, {}};
      tb.add({std::int64_t{o->n}, toy::spectral_radius_via_iterates(t.L, o->n), t.eig.cwiseAbs().maxCoeff()});
      return tb;
    };
  }

  auto* og = group("origami", "square-tiled surfaces");
  {
    auto* e = leaf(og, "info", "genus, cone angles, marked points");
    origami_opts(e->app);
    e->action = [&] {
      const Origami x = load();
      std::string kappa;
      for (int kk : x.kappa()) kappa += (kappa.empty() ? "" : " ") + std::to_string(kk);
      std::ostringstream id;
      id << std::hex << x.combinatorial_id();
      Table tb{{"n", "genus", "kappa", "marked", "relative_dimension", "sigma_h", "sigma_v", "id"}, {}};
      tb.add({std::int64_t{x.n()}, std::int64_t{x.genus()}, kappa, std::int64_t{x.num_marked()},
              std::int64_t{x.relative_dimension()}, format_cycles(x.sigma_h()),
              format_cycles(x.sigma_v()), id.str()});
      return tb;
    };
  }
  {
    auto o = std::make_shared<double>(0.0);
    auto* e = leaf(og, "saddles", "saddle connections of length <= L");
    origami_opts(e->app);
    e->app->add_option("--L", *o, "length bound")->required();
    e->action = [&, o] {
      const Origami x = load();
      Table tb{{"start_class", "end_class", "p", "q", "steps", "start_square", "hx", "hy", "length"}, {}};
      for (const auto& c : saddle_connections(x, *o, g.enumeration()))
        tb.add({std::int64_t{c.start_class}, std::int64_t{c.end_class}, c.holonomy.p, c.holonomy.q,
                std::int64_t{c.steps}, std::int64_t{c.start_square}, c.hx, c.hy, c.length});
      return tb;
    };
  }
  {
    auto o = std::make_shared<double>(0.1);
    auto* e = leaf(og, "systole", "systole and V_delta");
    origami_opts(e->app);
    e->app->add_option("--delta", *o, "delta in (0, 1/4)");
    e->action = [&, o] {
      const Origami x = load();
      const double sys = systole(x, g.enumeration());
      Table tb{{"systole", "v_delta"}, {}};
      tb.add({sys, v_delta_from_systole(sys, *o)});
      return tb;
    };
  }
  const std::string cocycle_help =
      "tautological, geodesic, horocycle, opp-horocycle, rotation, random-real, random-imag, "
      "random-complex";
  {
    struct O { std::string cocycle = "tautological"; double L = 0; };
    auto o = std::make_shared<O>();
    auto* e = leaf(og, "norm", "Finsler norm of a cocycle");
    origami_opts(e->app);
    e->app->add_option("--cocycle", o->cocycle, cocycle_help);
    e->app->add_option("--L", o->L, "truncation radius (0: automatic)");
    e->action = [&, o] {
      const Origami x = load();
      const Cocycle c = make_cocycle(x, o->cocycle, g);
      const double R = o->L > 0.0 ? o->L : default_norm_radius(x, g.enumeration());
      const auto r = agy_norm(x, c, R, g.enumeration());
      Table tb{{"value", "value_at_2L", "stabilized", "L", "connections", "argmax_p", "argmax_q"}, {}};
      tb.add({r.value, r.value_at_2L, std::int64_t{r.stabilized}, r.L, i64(r.connections), r.argmax.p,
              r.argmax.q});
      return tb;
    };
  }
  {
    struct O { std::string A, cocycle = "tautological"; double T = 0, L = 10; };
    auto o = std::make_shared<O>();
    auto* e = leaf(og, "path", "norm variation along t -> exp(tA) x");
    origami_opts(e->app);
    e->app->add_option("--A", o->A, "tangent a,b,c,d")->required();
    e->app->add_option("--T", o->T, "duration, at most 0.3")->required();
    e->app->add_option("--L", o->L, "truncation radius");
    e->app->add_option("--cocycle", o->cocycle, cocycle_help);
    e->action = [&, o] {
      const Origami x = load();
      const Cocycle c = make_cocycle(x, o->cocycle, g);
      PathOptions po;
      po.enumeration = g.enumeration();
      const auto r = path_norm_bounds(x, parse_matrix(o->A, "--A"), o->T, c, o->L, po);
      Table tb{{"length", "length_bound", "norm_start", "norm_end", "norm_ratio", "ratio_within_bounds",
                "connections", "checks", "violations", "worst_margin", "tangent_stabilized",
                "norm_stabilized"},
               {}};
      tb.add({r.length, r.length_bound, r.norm_start, r.norm_end, r.norm_ratio,
              std::int64_t{r.ratio_within_bounds}, i64(r.connections), i64(r.per_connection_checks),
              i64(r.per_connection_violations), r.worst_margin, std::int64_t{r.tangent_stabilized},
              std::int64_t{r.norm_stabilized}});
      return tb;
    };
  }

  auto* fl = group("flow", "recurrence under the geodesic flow");
  {
    struct O { double delta = 0.1, tmax = 8, dt = 0.5; int nodes = 64; };
    auto o = std::make_shared<O>();
    auto* e = leaf(fl, "recurrence", "horocycle averages of V_delta along g_t");
    origami_opts(e->app);
    e->app->add_option("--delta", o->delta, "delta in (0, 1/4)");
    e->app->add_option("--tmax", o->tmax, "last time");
    e->app->add_option("--dt", o->dt, "time step");
    e->app->add_option("--nodes", o->nodes, "initial trapezoid subintervals");
    e->action = [&, o] {
      const Origami x = load();
      dynamics::AverageOptions ao;
      ao.threads = g.threads;
      ao.enumeration = g.enumeration();
      if (g.tol_given) ao.rel_tol = g.tol;
      if (o->nodes < 16) throw InvalidInput("--nodes must be >= 16");
      const auto grid = sweep(0.0, o->tmax, o->dt);
      const auto p = dynamics::recurrence_profile(x, o->delta, grid, static_cast<std::size_t>(o->nodes), ao);
      Table tb{{"t", "average", "error", "ok", "envelope", "C", "failure"}, {}};
      for (std::size_t i = 0; i < p.t.size(); ++i)
        tb.add({p.t[i], p.average[i], p.error[i], std::int64_t{p.ok[i] ? 1 : 0},
                dynamics::envelope(p.C1, o->delta, p.v0, p.t[i]), p.C1, p.failure[i]});
      return tb;
    };
  }

  auto* mc = group("mc", "Monte Carlo on the space of unimodular lattices");
  {
    struct O { std::size_t N = 100000; double lo = 0.8, hi = 1.0, tmax = 4, dt = 1; };
    auto o = std::make_shared<O>();
    auto* e = leaf(mc, "correlate", "correlation of a systole bump with itself under g_t");
    e->app->add_option("--N", o->N, "samples");
    e->app->add_option("--lo", o->lo, "bump support start");
    e->app->add_option("--hi", o->hi, "bump support end");
    e->app->add_option("--tmax", o->tmax, "last time");
    e->app->add_option("--dt", o->dt, "time step");
    e->action = [&, o] {
      require_seed("mc correlate");
      const auto grid = sweep(0.0, o->tmax, o->dt);
      const auto c = dynamics::correlation_mc(dynamics::Observable::bump(o->lo, o->hi), grid, o->N, g.seed,
                                              g.threads);
      Table tb{{"t", "estimate", "std_error"}, {}};
      for (std::size_t i = 0; i < c.t.size(); ++i) tb.add({c.t[i], c.estimate[i], c.std_error[i]});
      return tb;
    };
  }

  auto* ft = group("fit", "exponential-sum fits");
  {
    struct O {
      std::string in, tcol = "t", ycol = "value";
      int k = 0;
      double tmin = 2.0, tmax = std::numeric_limits<double>::infinity();
    };
    auto o = std::make_shared<O>();
    auto* e = leaf(ft, "rates", "decay rates from a CSV series");
    e->app->add_option("--in", o->in, "CSV with a header row")->required();
    e->app->add_option("--k", o->k, "model order 1..4")->required();
    e->app->add_option("--tmin", o->tmin, "window start");
    e->app->add_option("--tmax", o->tmax, "window end");
    e->app->add_option("--tcol", o->tcol, "time column");
    e->app->add_option("--ycol", o->ycol, "value column");
    e->action = [o] {
      const auto [ts, ys] = read_series(o->in, o->tcol, o->ycol);
      specfit::FitOptions fo;
      fo.t_min = o->tmin;
      fo.t_max = o->tmax;
      const auto r = specfit::fit_exponential_sum(ts, ys, o->k, fo);
      Table tb{{"i", "rate", "coeff", "eigenvalue", "residual", "points"}, {}};
      for (std::size_t i = 0; i < r.rates.size(); ++i) {
        const double a = r.rates[i];
        const double lam = a >= 0.0 && a <= 1.0 ? specfit::rate_to_eigenvalue(a) : std::nan("");
        tb.add({i64(i), a, r.coeffs[i], lam, r.residual, i64(r.points)});
      }
      return tb;
    };
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  g.seed_given = app.get_option("--seed")->count() > 0;
  g.tol_given = app.get_option("--tol")->count() > 0;

  const Leaf* chosen = nullptr;
  for (const auto& l : leaves)
    if (l.app->parsed()) chosen = &l;
  if (!chosen) {
    err << "usage error: no command given\n" << app.help();
    return kUsage;
  }

  try {
    const Table table = chosen->action();
    out::Metadata meta;
    meta.command = chosen->command;
    for (const auto* opt : chosen->app->get_options()) {
      if (opt == chosen->app->get_help_ptr()) continue;
      std::string value;
      if (opt->count() > 0) {
        for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
      } else {
        value = opt->get_default_str();
      }
      if (!value.empty()) meta.params.emplace_back(opt->get_single_name(), value);
    }
    meta.params.emplace_back("format", g.format);
    if (g.tol_given) meta.params.emplace_back("tol", out::format_double(g.tol));
    meta.params.emplace_back("budget", std::to_string(g.budget));
    if (g.seed_given) meta.seed = g.seed;
    const std::string text = g.format == "json" ? out::to_json(meta, table) : out::to_csv(meta, table);
    if (g.out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(g.out_path, std::ios::binary);
      if (!f || !(f << text)) throw InvalidInput("cannot write '" + g.out_path + "'");
    }
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const ResourceError& e) {
    err << "budget exhausted: " << e.what() << " (partial count " << e.partial_count() << ")\n";
    return kNumerical;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const PoleError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace teich::cli

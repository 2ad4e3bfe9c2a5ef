#include "fbstairs/circle.hpp"
#include "fbstairs/contfrac.hpp"
#include "fbstairs/farey.hpp"
#include "fbstairs/io.hpp"
#include "fbstairs/omega.hpp"
#include "fbstairs/selfsim.hpp"
#include "fbstairs/staircase.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace {

using fbstairs::BigInt;
using fbstairs::Fraction;
namespace cf = fbstairs::cf;
namespace io = fbstairs::io;
namespace model = fbstairs::model;
namespace omg = fbstairs::omega;
namespace ss = fbstairs::selfsim;

constexpr const char* kUsage = R"(usage: fbstairs <command> [options]

commands:
  farey      list one mediant-interpolation level
  classify   growth-type estimate for a digit sequence
  lock       solve and list mode-locking intervals (circle model only)
  staircase  plateau table for one level
  omega      dust intervals between plateaus at one depth
  spectrum   partition exponents and concentration spectrum at one depth
  selfsim    per-level size regressions and the slope law
  fig1       mean plateau width per denominator, with power-law fit
  help       this text

common options:
  --model M         circle | ising | ternary         (default circle)
  --a X --gamma X   ising exponent and coefficient   (default 2.0, 2.0)
  --table-pmax N    ising width-table denominator cap (default 1024)
  --omega-tol X --phase-grid N --refine-iters N --max-period N
                    circle solver controls (defaults 1e-10, 256, 48, 256)
  --cache PATH      circle solver result cache
                    (the FBSTAIRS_CACHE_PATH environment variable overrides)
  --depth K         partition depth (level for staircase)
  --out PATH        output file (default stdout)
  --format F        csv | json                        (default csv)
  --jobs N          solver worker threads             (default 1)

command options:
  farey     --k K              level index, 1..20
  classify  --digits SPEC --n N
            SPEC is "a1,a2,..." (literal digits; a trailing ,... repeats the
            block), or one of golden | silver | arith | alternating |
            liouville:A1 | power:B with B an integer or P/Q rational >= 2
  spectrum  --qgrid LO:HI:N    evenly spaced moment grid (default: builtin)
  selfsim   --kmin K --kmax K --points-out PATH
  fig1      --pmax P           largest denominator in the width table

exit codes: 0 success, 2 usage, 3 solver non-convergence, 4 cache mismatch
)";

long parse_long(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": not an integer: '" + s + "'");
  }
  if (pos != s.size())
    throw std::invalid_argument(what + ": not an integer: '" + s + "'");
  return v;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": not a number: '" + s + "'");
  }
  if (pos != s.size())
    throw std::invalid_argument(what + ": not a number: '" + s + "'");
  return v;
}

/// "P/Q" or plain integer, as an exact rational.
Fraction parse_fraction(const std::string& s, const std::string& what) {
  const auto slash = s.find('/');
  if (slash == std::string::npos)
    return Fraction{BigInt(parse_long(s, what)), BigInt(1)};
  const long num = parse_long(s.substr(0, slash), what);
  const long den = parse_long(s.substr(slash + 1), what);
  if (den <= 0) throw std::invalid_argument(what + ": denominator must be positive");
  return Fraction{BigInt(num), BigInt(den)};
}

struct Args {
  std::string command;
  std::map<std::string, std::string> opts;
};

Args parse_args(int argc, char** argv) {
  Args a;
  if (argc < 2) throw std::invalid_argument("missing command");
  a.command = argv[1];
  for (int i = 2; i < argc; ++i) {
    std::string tok = argv[i];
    if (tok.rfind("--", 0) != 0)
      throw std::invalid_argument("unexpected argument '" + tok + "'");
    tok = tok.substr(2);
    if (const auto eq = tok.find('='); eq != std::string::npos) {
      a.opts[tok.substr(0, eq)] = tok.substr(eq + 1);
    } else {
      if (i + 1 >= argc)
        throw std::invalid_argument("option --" + tok + " needs a value");
      a.opts[tok] = argv[++i];
    }
  }
  return a;
}

/// Typed option access that rejects anything left unread, so a misspelled
/// flag is a usage error rather than a silent no-op.
class OptionReader {
 public:
  explicit OptionReader(std::map<std::string, std::string> opts)
      : opts_(std::move(opts)) {}

  bool has(const std::string& key) {
    used_.insert(key);
    return opts_.count(key) > 0;
  }
  std::string str(const std::string& key, const std::string& fallback) {
    used_.insert(key);
    const auto it = opts_.find(key);
    return it == opts_.end() ? fallback : it->second;
  }
  long integer(const std::string& key, long fallback) {
    used_.insert(key);
    const auto it = opts_.find(key);
    return it == opts_.end() ? fallback : parse_long(it->second, "--" + key);
  }
  double real(const std::string& key, double fallback) {
    used_.insert(key);
    const auto it = opts_.find(key);
    return it == opts_.end() ? fallback : parse_double(it->second, "--" + key);
  }
  void finish() const {
    for (const auto& [key, value] : opts_)
      if (!used_.count(key))
        throw std::invalid_argument("unknown option --" + key);
  }

 private:
  std::map<std::string, std::string> opts_;
  std::set<std::string> used_;
};

/// Output plumbing shared by every table-emitting command.
struct OutputConfig {
  std::string path;
  io::Format format = io::Format::csv;
};

OutputConfig read_output(OptionReader& opt) {
  OutputConfig out;
  out.path = opt.str("out", "");
  out.format = io::parse_format(opt.str("format", "csv"));
  return out;
}

void emit(const io::Table& t, const OutputConfig& out) {
  io::write_text(io::render(t, out.format), out.path);
}

/// The staircase model selected on the command line, with its solver knobs
/// and (for the circle map) the optional result cache.
struct ModelBundle {
  std::string name;
  double a = 2.0;
  double gamma = 2.0;
  int table_pmax = 1024;
  model::CircleSolverConfig ccfg;
  std::string cache_path;
  std::shared_ptr<model::LockCache> cache;
  std::unique_ptr<model::StaircaseModel> m;
  model::CircleMapModel* circle = nullptr;  // non-null iff name == "circle"
  int jobs = 1;
};

ModelBundle make_model(OptionReader& opt) {
  ModelBundle b;
  b.name = opt.str("model", "circle");
  b.a = opt.real("a", 2.0);
  b.gamma = opt.real("gamma", 2.0);
  b.table_pmax = static_cast<int>(opt.integer("table-pmax", 1024));
  b.ccfg.omega_tol = opt.real("omega-tol", b.ccfg.omega_tol);
  b.ccfg.phase_grid = static_cast<int>(opt.integer("phase-grid", b.ccfg.phase_grid));
  b.ccfg.refine_iters =
      static_cast<int>(opt.integer("refine-iters", b.ccfg.refine_iters));
  b.ccfg.max_period = static_cast<int>(opt.integer("max-period", b.ccfg.max_period));
  b.cache_path = opt.str("cache", "");
  if (const char* env = std::getenv("FBSTAIRS_CACHE_PATH")) b.cache_path = env;
  b.jobs = static_cast<int>(opt.integer("jobs", 1));
  if (b.jobs < 1) throw std::invalid_argument("--jobs must be at least 1");

  if (b.name == "ising") {
    b.m = std::make_unique<model::IsingModel>(b.a, b.gamma, b.table_pmax);
  } else if (b.name == "ternary") {
    b.m = std::make_unique<model::TernaryModel>();
  } else if (b.name == "circle") {
    if (!b.cache_path.empty())
      b.cache = std::make_shared<model::LockCache>(b.cache_path, b.ccfg);
    auto cm = std::make_unique<model::CircleMapModel>(b.ccfg, b.cache);
    b.circle = cm.get();
    b.m = std::move(cm);
  } else {
    throw std::invalid_argument("unknown model '" + b.name +
                                "' (expected circle, ising, or ternary)");
  }
  return b;
}

/// Echo of the parameters that determine the numbers. Worker counts and
/// cache locations change neither, so they stay out of the preamble.
void add_model_preamble(io::Table& t, const ModelBundle& b) {
  t.preamble.emplace_back("model", b.name);
  if (b.name == "ising") {
    t.preamble.emplace_back("a", io::format_double(b.a));
    t.preamble.emplace_back("gamma", io::format_double(b.gamma));
    t.preamble.emplace_back("table_pmax", io::format_long(b.table_pmax));
  } else if (b.name == "circle") {
    t.preamble.emplace_back("omega_tol", io::format_double(b.ccfg.omega_tol));
    t.preamble.emplace_back("phase_grid", io::format_long(b.ccfg.phase_grid));
    t.preamble.emplace_back("refine_iters", io::format_long(b.ccfg.refine_iters));
    t.preamble.emplace_back("max_period", io::format_long(b.ccfg.max_period));
  }
}

long fibonacci(int n) {
  if (n <= 0) return 0;
  long prev = 1, cur = 1;
  for (int i = 3; i <= n; ++i) {
    const long next = prev + cur;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// The deepest denominator in farey_level(level) is the (level+1)-th
/// Fibonacci number; refuse up front when the solver cap cannot reach it.
void require_circle_feasible(const ModelBundle& b, int level) {
  if (!b.circle) return;
  const long need = fibonacci(level + 1);
  if (need > b.ccfg.max_period)
    throw std::invalid_argument(
        "level " + std::to_string(level) + " needs plateau periods up to " +
        std::to_string(need) + " but --max-period is " +
        std::to_string(b.ccfg.max_period));
}

void prefetch(const ModelBundle& b, const std::vector<Fraction>& fs) {
  if (b.circle && b.jobs > 1) b.circle->solve_many(fs, b.jobs);
}

void report_cache(const ModelBundle& b) {
  if (b.cache)
    std::cerr << "cache " << b.cache->path() << ": " << b.cache->hits()
              << " hits, " << b.cache->misses() << " misses, "
              << b.cache->size() << " entries\n";
}

// --- farey -------------------------------------------------------------

int cmd_farey(OptionReader& opt) {
  if (!opt.has("k")) throw std::invalid_argument("farey needs --k");
  const int k = static_cast<int>(opt.integer("k", 0));
  const OutputConfig out = read_output(opt);
  opt.finish();

  const fbstairs::FareyLevel level = fbstairs::farey_level(k);
  io::Table t;
  t.name = "farey";
  t.preamble.emplace_back("table", t.name);
  t.preamble.emplace_back("k", io::format_long(k));
  t.columns = {"q", "p"};
  for (const Fraction& f : level.entries)
    t.rows.push_back({f.num().str(), f.den().str()});
  emit(t, out);
  return 0;
}

// --- classify ----------------------------------------------------------

struct DigitSpec {
  cf::PartialQuotients pq;
  bool finite = false;  // literal list without a trailing ,...
};

DigitSpec make_digits(const std::string& spec, int count) {
  if (spec == "golden") return {cf::golden_digits(count), false};
  if (spec == "silver") return {cf::silver_digits(count), false};
  if (spec == "arith") return {cf::arithmetic_digits(count), false};
  if (spec == "alternating") return {cf::alternating_digits(count), false};
  if (spec.rfind("liouville:", 0) == 0) {
    const long a1 = parse_long(spec.substr(10), "liouville seed");
    return {cf::liouville_digits(BigInt(a1), count).digits, false};
  }
  if (spec.rfind("power:", 0) == 0) {
    const Fraction beta = parse_fraction(spec.substr(6), "power exponent");
    return {cf::power_calibrated_digits(beta, count), false};
  }

  std::vector<std::string> tokens;
  std::string tok;
  std::istringstream in(spec);
  while (std::getline(in, tok, ',')) tokens.push_back(tok);
  bool cyclic = false;
  if (!tokens.empty() && tokens.back() == "...") {
    cyclic = true;
    tokens.pop_back();
  }
  if (tokens.empty())
    throw std::invalid_argument("--digits: empty digit list in '" + spec + "'");
  std::vector<BigInt> block;
  block.reserve(tokens.size());
  for (const std::string& s : tokens)
    block.emplace_back(parse_long(s, "--digits entry"));
  if (!cyclic) return {cf::PartialQuotients(std::move(block)), true};

  std::vector<BigInt> digits;
  digits.reserve(count);
  for (int i = 0; i < count; ++i) digits.push_back(block[i % block.size()]);
  return {cf::PartialQuotients(std::move(digits)), false};
}

std::string label_text(const cf::TypeEstimate& est) {
  switch (est.label) {
    case cf::TypeLabel::g_infinity:
      return "G_inf";
    case cf::TypeLabel::inconclusive:
      return "inconclusive";
    case cf::TypeLabel::finite_beta:
    default: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.1f", est.beta_hat);
      std::string s = buf;
      if (s.size() > 2 && s.compare(s.size() - 2, 2, ".0") == 0)
        s.resize(s.size() - 2);
      return "G_" + s;
    }
  }
}

int cmd_classify(OptionReader& opt) {
  if (!opt.has("digits")) throw std::invalid_argument("classify needs --digits");
  const std::string spec = opt.str("digits", "");
  const int n = static_cast<int>(opt.integer("n", 25));
  if (n < 2) throw std::invalid_argument("--n must be at least 2");
  const OutputConfig out = read_output(opt);
  opt.finish();

  const DigitSpec ds = make_digits(spec, n + 1);

  io::Table t;
  t.name = "classify";
  t.preamble.emplace_back("table", t.name);
  t.preamble.emplace_back("digits", spec);
  t.preamble.emplace_back("n", io::format_long(n));
  t.columns = {"quantity", "n", "value"};

  if (ds.finite) {
    // A finite digit list is a rational; growth classification does not
    // apply, so report the exact value instead.
    const auto cs = cf::convergents(ds.pq, static_cast<int>(ds.pq.size()));
    t.rows.push_back({"label", "", "rational"});
    t.rows.push_back({"value", "", cs.back().value().str()});
    t.rows.push_back({"digits", "", io::format_long(static_cast<long>(ds.pq.size()))});
    emit(t, out);
    return 0;
  }

  const cf::TypeEstimate est = cf::beta_estimate(ds.pq, n);
  t.rows.push_back({"beta_hat", "", io::format_double(est.beta_hat)});
  t.rows.push_back({"label", "", label_text(est)});
  t.rows.push_back({"first_index", "", io::format_long(est.first_index)});
  t.rows.push_back({"window", "", io::format_long(est.window)});
  for (std::size_t i = 0; i < est.ratio_series.size(); ++i)
    t.rows.push_back({"ratio", io::format_long(est.first_index + static_cast<long>(i)),
                      io::format_double(est.ratio_series[i])});
  for (std::size_t i = 0; i < est.exponent_series.size(); ++i)
    t.rows.push_back({"exponent",
                      io::format_long(est.first_index + static_cast<long>(i)),
                      io::format_double(est.exponent_series[i])});
  emit(t, out);
  return 0;
}

// --- lock --------------------------------------------------------------

int cmd_lock(OptionReader& opt) {
  ModelBundle b = make_model(opt);
  const int depth = static_cast<int>(opt.integer("depth", 3));
  const OutputConfig out = read_output(opt);
  opt.finish();
  if (!b.circle)
    throw std::invalid_argument("lock requires --model circle");
  if (depth < 0) throw std::invalid_argument("--depth must be >= 0");
  require_circle_feasible(b, depth + 1);

  const fbstairs::FareyLevel level = fbstairs::farey_level(depth + 1);
  prefetch(b, level.entries);

  std::vector<std::pair<Fraction, model::LockingInterval>> solved;
  for (const Fraction& f : level.entries) solved.emplace_back(f, b.circle->tongue(f));
  std::sort(solved.begin(), solved.end(), [](const auto& lhs, const auto& rhs) {
    if (lhs.second.p != rhs.second.p) return lhs.second.p < rhs.second.p;
    return lhs.second.q < rhs.second.q;
  });

  io::Table t;
  t.name = "lock";
  t.preamble.emplace_back("table", t.name);
  add_model_preamble(t, b);
  t.preamble.emplace_back("depth", io::format_long(depth));
  t.columns = {"q", "p", "omega_minus", "omega_plus", "width", "converged",
               "residual"};
  std::vector<std::string> stalled;
  for (const auto& [f, lk] : solved) {
    t.rows.push_back({io::format_long(lk.q), io::format_long(lk.p),
                      io::format_double(lk.omega_minus),
                      io::format_double(lk.omega_plus),
                      io::format_double(lk.width()), lk.converged ? "1" : "0",
                      io::format_double(lk.residual)});
    if (!lk.converged) stalled.push_back(f.str());
  }
  emit(t, out);
  report_cache(b);
  if (!stalled.empty()) {
    std::cerr << "non-converged plateaus:";
    for (const std::string& s : stalled) std::cerr << ' ' << s;
    std::cerr << '\n';
    return 3;
  }
  return 0;
}

// --- staircase ---------------------------------------------------------

int cmd_staircase(OptionReader& opt) {
  ModelBundle b = make_model(opt);
  const int level = static_cast<int>(opt.integer("depth", 4));
  const OutputConfig out = read_output(opt);
  opt.finish();
  require_circle_feasible(b, level);

  prefetch(b, fbstairs::farey_level(level).entries);
  const std::vector<model::StaircaseRow> rows =
      model::assemble_staircase(*b.m, level);

  io::Table t;
  t.name = "staircase";
  t.preamble.emplace_back("table", t.name);
  add_model_preamble(t, b);
  t.preamble.emplace_back("level", io::format_long(level));
  t.columns = {"q", "p", "x_left", "x_right", "width"};
  std::vector<std::string> stalled;
  for (const model::StaircaseRow& row : rows) {
    t.rows.push_back({row.f.num().str(), row.f.den().str(),
                      io::format_double(row.span.x_left),
                      io::format_double(row.span.x_right),
                      io::format_double(row.span.width())});
    if (!row.span.converged) stalled.push_back(row.f.str());
  }
  emit(t, out);
  report_cache(b);
  if (!stalled.empty()) {
    std::cerr << "non-converged plateaus:";
    for (const std::string& s : stalled) std::cerr << ' ' << s;
    std::cerr << '\n';
    return 3;
  }
  return 0;
}

// --- omega -------------------------------------------------------------

int cmd_omega(OptionReader& opt) {
  ModelBundle b = make_model(opt);
  const int depth = static_cast<int>(opt.integer("depth", 4));
  const OutputConfig out = read_output(opt);
  opt.finish();
  if (depth < 0) throw std::invalid_argument("--depth must be >= 0");
  require_circle_feasible(b, depth + 1);

  prefetch(b, fbstairs::farey_level(depth + 1).entries);
  const omg::OmegaApprox approx = omg::omega_approx(*b.m, depth);

  io::Table t;
  t.name = "omega";
  t.preamble.emplace_back("table", t.name);
  add_model_preamble(t, b);
  t.preamble.emplace_back("depth", io::format_long(depth));
  t.columns = {"depth",   "left_q", "left_p",       "right_q",
               "right_p", "length", "domain_length"};
  for (const omg::OmegaInterval& iv : approx.intervals)
    t.rows.push_back({io::format_long(depth), iv.label.left.num().str(),
                      iv.label.left.den().str(), iv.label.right.num().str(),
                      iv.label.right.den().str(), io::format_double(iv.length),
                      io::format_double(approx.domain_length)});
  emit(t, out);
  report_cache(b);
  return 0;
}

// --- spectrum ----------------------------------------------------------

std::vector<double> make_q_grid(const std::string& spec) {
  if (spec.empty()) return omg::default_q_grid();
  std::vector<std::string> parts;
  std::string tok;
  std::istringstream in(spec);
  while (std::getline(in, tok, ':')) parts.push_back(tok);
  if (parts.size() != 3)
    throw std::invalid_argument("--qgrid expects LO:HI:N, got '" + spec + "'");
  const double lo = parse_double(parts[0], "--qgrid LO");
  const double hi = parse_double(parts[1], "--qgrid HI");
  const long n = parse_long(parts[2], "--qgrid N");
  if (n < 1) throw std::invalid_argument("--qgrid N must be at least 1");
  if (n > 1 && !(hi > lo))
    throw std::invalid_argument("--qgrid needs HI > LO for more than one point");
  std::vector<double> grid;
  grid.reserve(n);
  for (long i = 0; i < n; ++i)
    grid.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) /
                                          static_cast<double>(n - 1));
  return grid;
}

int cmd_spectrum(OptionReader& opt) {
  ModelBundle b = make_model(opt);
  const int depth = static_cast<int>(opt.integer("depth", 4));
  const std::string qgrid_spec = opt.str("qgrid", "");
  const OutputConfig out = read_output(opt);
  opt.finish();
  if (depth < 0) throw std::invalid_argument("--depth must be >= 0");
  require_circle_feasible(b, depth + 1);

  const std::vector<double> grid = make_q_grid(qgrid_spec);
  prefetch(b, fbstairs::farey_level(depth + 1).entries);
  const omg::OmegaApprox approx = omg::omega_approx(*b.m, depth);
  const std::vector<omg::SpectrumPoint> sp = omg::spectrum(approx, grid);

  io::Table t;
  t.name = "spectrum";
  t.preamble.emplace_back("table", t.name);
  add_model_preamble(t, b);
  t.preamble.emplace_back("depth", io::format_long(depth));
  t.preamble.emplace_back("qgrid", qgrid_spec.empty() ? "default" : qgrid_spec);
  t.columns = {"q", "tau", "alpha", "f"};
  for (const omg::SpectrumPoint& pt : sp)
    t.rows.push_back({io::format_double(pt.q), io::format_double(pt.tau),
                      io::format_double(pt.alpha), io::format_double(pt.f)});
  emit(t, out);
  report_cache(b);
  return 0;
}

// --- selfsim -----------------------------------------------------------

int cmd_selfsim(OptionReader& opt) {
  ModelBundle b = make_model(opt);
  const int kmin = static_cast<int>(opt.integer("kmin", 2));
  const int kmax = static_cast<int>(opt.integer("kmax", 6));
  const std::string points_path = opt.str("points-out", "");
  const OutputConfig out = read_output(opt);
  opt.finish();
  require_circle_feasible(b, kmax + 1);

  prefetch(b, fbstairs::farey_level(kmax + 1).entries);

  io::Table slopes;
  slopes.name = "selfsim";
  slopes.preamble.emplace_back("table", slopes.name);
  add_model_preamble(slopes, b);
  slopes.preamble.emplace_back("kmin", io::format_long(kmin));
  slopes.preamble.emplace_back("kmax", io::format_long(kmax));
  slopes.columns = {"k", "slope", "intercept", "r2"};

  io::Table points;
  points.name = "selfsim_points";
  points.preamble = slopes.preamble;
  points.preamble[0].second = points.name;
  points.columns = {"k", "q", "p", "omega_len", "fb_len"};

  if (kmin < 2) throw std::invalid_argument("--kmin must be at least 2");
  if (kmax <= kmin)
    throw std::invalid_argument("--kmax must exceed --kmin");
  for (int k = kmin; k <= kmax; ++k) {
    const ss::SizesRegression reg = ss::sizes_regression(*b.m, k);
    slopes.rows.push_back({io::format_long(k), io::format_double(reg.fit.slope),
                           io::format_double(reg.fit.intercept),
                           io::format_double(reg.fit.r2)});
    if (points_path.empty()) continue;
    std::vector<ss::SizePoint> ordered = reg.points;
    std::sort(ordered.begin(), ordered.end(),
              [](const ss::SizePoint& lhs, const ss::SizePoint& rhs) {
                if (lhs.label.left.den() != rhs.label.left.den())
                  return lhs.label.left.den() < rhs.label.left.den();
                return lhs.label.left.num() < rhs.label.left.num();
              });
    for (const ss::SizePoint& pt : ordered)
      points.rows.push_back({io::format_long(k), pt.label.left.num().str(),
                             pt.label.left.den().str(),
                             io::format_double(pt.omega_len),
                             io::format_double(pt.fb_len)});
  }

  const ss::SlopeLaw law = ss::slope_law(*b.m, kmin, kmax);
  std::cerr << "slope law: slope=" << io::format_double(law.linear_fit.slope)
            << " intercept=" << io::format_double(law.linear_fit.intercept)
            << " r2=" << io::format_double(law.linear_fit.r2) << '\n';
  if (!law.weak_fit_ks.empty()) {
    std::cerr << "weak per-level fits (r2 < 0.9) at k:";
    for (int k : law.weak_fit_ks) std::cerr << ' ' << k;
    std::cerr << '\n';
  }

  emit(slopes, out);
  if (!points_path.empty())
    io::write_text(io::render(points, out.format), points_path);
  report_cache(b);
  return 0;
}

// --- fig1 --------------------------------------------------------------

int cmd_fig1(OptionReader& opt) {
  ModelBundle b = make_model(opt);
  const int pmax = static_cast<int>(opt.integer("pmax", 32));
  const OutputConfig out = read_output(opt);
  opt.finish();
  if (pmax < 1) throw std::invalid_argument("--pmax must be at least 1");
  if (b.circle && pmax > b.ccfg.max_period)
    throw std::invalid_argument(
        "--pmax " + std::to_string(pmax) + " exceeds --max-period " +
        std::to_string(b.ccfg.max_period));

  if (b.circle) {
    std::vector<Fraction> fs;
    fs.push_back(Fraction{BigInt(0), BigInt(1)});
    fs.push_back(Fraction{BigInt(1), BigInt(1)});
    for (long p = 2; p <= pmax; ++p)
      for (long q = 1; q < p; ++q)
        if (std::gcd(q, p) == 1) fs.push_back(Fraction{BigInt(q), BigInt(p)});
    prefetch(b, fs);
  }

  const std::vector<ss::MeanWidthRow> rows = ss::mean_width_table(*b.m, pmax);
  const ss::FitResult fit = ss::fig1_regression(*b.m, pmax);

  io::Table t;
  t.name = "fig1";
  t.preamble.emplace_back("table", t.name);
  add_model_preamble(t, b);
  t.preamble.emplace_back("pmax", io::format_long(pmax));
  t.columns = {"p", "mean_width", "log_p", "log_mean_width"};
  for (const ss::MeanWidthRow& row : rows)
    t.rows.push_back({io::format_long(row.p), io::format_double(row.mean_width),
                      io::format_double(std::log10(static_cast<double>(row.p))),
                      io::format_double(std::log10(row.mean_width))});
  emit(t, out);
  std::cerr << "fit (natural-log axes): slope=" << io::format_double(fit.slope)
            << " intercept=" << io::format_double(fit.intercept)
            << " r2=" << io::format_double(fit.r2)
            << " residual_max=" << io::format_double(fit.residual_max)
            << " n=" << fit.n_points << '\n';
  report_cache(b);
  return 0;
}

int run(int argc, char** argv) {
  Args args = parse_args(argc, argv);
  if (args.command == "help" || args.command == "--help") {
    std::cout << kUsage;
    return 0;
  }
  OptionReader opt{std::move(args.opts)};
  if (args.command == "farey") return cmd_farey(opt);
  if (args.command == "classify") return cmd_classify(opt);
  if (args.command == "lock") return cmd_lock(opt);
  if (args.command == "staircase") return cmd_staircase(opt);
  if (args.command == "omega") return cmd_omega(opt);
  if (args.command == "spectrum") return cmd_spectrum(opt);
  if (args.command == "selfsim") return cmd_selfsim(opt);
  if (args.command == "fig1") return cmd_fig1(opt);
  throw std::invalid_argument("unknown command '" + args.command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const model::CacheConfigMismatch& e) {
    std::cerr << "fbstairs: " << e.what() << '\n';
    return 4;
  } catch (const std::runtime_error& e) {
    std::cerr << "fbstairs: " << e.what() << '\n';
    return 3;
  } catch (const std::logic_error& e) {
    std::cerr << "fbstairs: " << e.what() << "\nrun 'fbstairs help' for usage\n";
    return 2;
  }
}

#include "nlt/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace nlt {

namespace pt = boost::property_tree;

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

double parse_double(const std::string& text, const std::string& key) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto r = std::from_chars(first, last, v);
  if (r.ec != std::errc() || r.ptr != last || first == last)
    throw std::invalid_argument(key + ": not a number '" + text + "'");
  return v;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

long long parse_integer(const std::string& text, const std::string& key) {
  long long v = 0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size() || text.empty())
    throw std::invalid_argument(key + ": not an integer '" + text + "'");
  return v;
}

bool parse_bool(const std::string& text, const std::string& key) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw std::invalid_argument(key + ": expected true or false, got '" + text + "'");
}

std::vector<double> parse_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  for (const std::string& item : split(text, ',')) out.push_back(parse_double(item, key));
  return out;
}

Point parse_point(const std::string& text, const std::string& key) {
  const std::vector<double> v = parse_list(text, key);
  if (v.empty() || v.size() > std::size_t(kMaxDimension)) throw std::invalid_argument(key + ": expected 1 to 3 coordinates");
  Point p{0.0, 0.0, 0.0};
  std::copy(v.begin(), v.end(), p.begin());
  return p;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

std::string point_text(const Point& p, int n) {
  return join(std::vector<double>(p.begin(), p.begin() + n));
}

using Setter = void (*)(RunConfig&, const std::string&, const std::string&);

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const std::map<std::string, std::map<std::string, Setter>> s{
      {"grid",
       {{"n", [](RunConfig& c, const std::string& v, const std::string& k) { c.n = int(parse_integer(v, k)); }},
        {"N", [](RunConfig& c, const std::string& v, const std::string& k) { c.N = int(parse_integer(v, k)); }},
        {"L", [](RunConfig& c, const std::string& v, const std::string& k) { c.L = parse_double(v, k); }}}},
      {"model",
       {{"alpha", [](RunConfig& c, const std::string& v, const std::string& k) { c.model.alpha = parse_double(v, k); }},
        {"kappa", [](RunConfig& c, const std::string& v, const std::string& k) { c.model.kappa = parse_double(v, k); }},
        {"gamma", [](RunConfig& c, const std::string& v, const std::string& k) { c.model.gamma = parse_double(v, k); }},
        {"velocity_type",
         [](RunConfig& c, const std::string& v, const std::string&) { c.model.velocity = parse_velocity_type(v); }}}},
      {"time",
       {{"T_end", [](RunConfig& c, const std::string& v, const std::string& k) { c.t_end = parse_double(v, k); }},
        {"c_cfl", [](RunConfig& c, const std::string& v, const std::string& k) { c.c_cfl = parse_double(v, k); }},
        {"dt_max", [](RunConfig& c, const std::string& v, const std::string& k) { c.dt_max = parse_double(v, k); }}}},
      {"stops",
       {{"grad_factor", [](RunConfig& c, const std::string& v, const std::string& k) { c.grad_factor = parse_double(v, k); }},
        {"tail_threshold",
         [](RunConfig& c, const std::string& v, const std::string& k) { c.tail_threshold = parse_double(v, k); }}}},
      {"output",
       {{"series_path", [](RunConfig& c, const std::string& v, const std::string&) { c.series_path = v; }},
        {"record_interval",
         [](RunConfig& c, const std::string& v, const std::string& k) { c.record_interval = parse_double(v, k); }},
        {"snapshot_times",
         [](RunConfig& c, const std::string& v, const std::string& k) { c.snapshot_times = parse_list(v, k); }},
        {"snapshot_cadence",
         [](RunConfig& c, const std::string& v, const std::string& k) { c.snapshot_cadence = parse_double(v, k); }},
        {"snapshot_dir", [](RunConfig& c, const std::string& v, const std::string&) { c.snapshot_dir = v; }}}},
      {"initial",
       {{"kind", [](RunConfig& c, const std::string& v, const std::string&) { c.initial.kind = parse_initial_kind(v); }},
        {"A", [](RunConfig& c, const std::string& v, const std::string& k) { c.initial.A = parse_double(v, k); }},
        {"sigma", [](RunConfig& c, const std::string& v, const std::string& k) { c.initial.sigma = parse_double(v, k); }},
        {"radius", [](RunConfig& c, const std::string& v, const std::string& k) { c.initial.radius = parse_double(v, k); }},
        {"center",
         [](RunConfig& c, const std::string& v, const std::string& k) {
           if (v == "auto")
             c.initial.center.reset();
           else
             c.initial.center = parse_point(v, k);
         }},
        {"separation",
         [](RunConfig& c, const std::string& v, const std::string& k) { c.initial.separation = parse_double(v, k); }},
        {"k_cut", [](RunConfig& c, const std::string& v, const std::string& k) { c.initial.k_cut = int(parse_integer(v, k)); }},
        {"amplitude",
         [](RunConfig& c, const std::string& v, const std::string& k) { c.initial.amplitude = parse_double(v, k); }},
        {"seed",
         [](RunConfig& c, const std::string& v, const std::string& k) {
           const long long s = parse_integer(v, k);
           if (s < 0) throw std::invalid_argument(k + " must be >= 0");
           c.initial.seed = std::uint64_t(s);
         }}}},
      {"checks",
       {{"names",
         [](RunConfig& c, const std::string& v, const std::string&) { c.checks.names = split(v, ','); }},
        {"mass_tolerance",
         [](RunConfig& c, const std::string& v, const std::string& k) { c.checks.mass_tolerance = parse_double(v, k); }},
        {"tail_window",
         [](RunConfig& c, const std::string& v, const std::string& k) { c.checks.tail_window = parse_double(v, k); }},
        {"extrema_rate",
         [](RunConfig& c, const std::string& v, const std::string& k) { c.checks.extrema_rate = parse_double(v, k); }},
        {"degiorgi_k_max",
         [](RunConfig& c, const std::string& v, const std::string& k) {
           c.checks.degiorgi_k_max = int(parse_integer(v, k));
         }}}},
      {"tracers",
       {{"seeds",
         [](RunConfig& c, const std::string& v, const std::string& k) {
           c.tracer_seeds.clear();
           for (const std::string& item : split(v, ';')) c.tracer_seeds.push_back(parse_point(item, k));
         }},
        {"at_maximum",
         [](RunConfig& c, const std::string& v, const std::string& k) { c.tracer_at_maximum = parse_bool(v, k); }},
        {"path", [](RunConfig& c, const std::string& v, const std::string&) { c.tracer_path = v; }}}},
  };
  return s;
}

}  // namespace

std::vector<double> RunConfig::all_snapshot_times() const {
  std::vector<double> times = snapshot_times;
  if (snapshot_cadence > 0.0) {
    for (long long i = 0;; ++i) {
      const double t = double(i) * snapshot_cadence;
      if (t > t_end * (1.0 + 1e-12)) break;
      times.push_back(std::min(t, t_end));
    }
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

RunControls RunConfig::controls() const {
  RunControls c;
  c.t_end = t_end;
  c.c_cfl = c_cfl;
  c.dt_max = dt_max;
  c.grad_factor = grad_factor;
  c.tail_threshold = tail_threshold;
  c.record_interval = record_interval;
  c.snapshot_times = all_snapshot_times();
  return c;
}

void RunConfig::validate() const {
  if (n < 1 || n > 3) throw std::invalid_argument("grid.n out of {1,2,3}");
  if (N < 4 || N % 2 != 0) throw std::invalid_argument("grid.N must be even and >= 4");
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("grid.L must be > 0");
  model.validate(n);
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("time.T_end must be > 0");
  if (!(c_cfl > 0.0)) throw std::invalid_argument("time.c_cfl must be > 0");
  if (!(dt_max > 0.0)) throw std::invalid_argument("time.dt_max must be > 0");
  if (!(grad_factor > 1.0)) throw std::invalid_argument("stops.grad_factor must be > 1");
  if (!(tail_threshold > 0.0)) throw std::invalid_argument("stops.tail_threshold must be > 0");
  if (!(record_interval > 0.0)) throw std::invalid_argument("output.record_interval must be > 0");
  if (snapshot_cadence < 0.0) throw std::invalid_argument("output.snapshot_cadence must be >= 0");
  for (double t : snapshot_times)
    if (!(t >= 0.0 && t <= t_end)) throw std::invalid_argument("output.snapshot_times must lie in [0, T_end]");
  if (series_path.empty()) throw std::invalid_argument("output.series_path must not be empty");
  if (snapshot_dir.empty()) throw std::invalid_argument("output.snapshot_dir must not be empty");
  initial.validate(grid());
  for (const std::string& name : checks.names)
    if (std::find(known_checks().begin(), known_checks().end(), name) == known_checks().end())
      throw std::invalid_argument("checks.names: unknown check '" + name + "'");
  if (!(checks.mass_tolerance > 0.0)) throw std::invalid_argument("checks.mass_tolerance must be > 0");
  if (!(checks.tail_window > 0.0)) throw std::invalid_argument("checks.tail_window must be > 0");
  if (!(checks.extrema_rate >= 0.0)) throw std::invalid_argument("checks.extrema_rate must be >= 0");
  if (checks.degiorgi_k_max < 1) throw std::invalid_argument("checks.degiorgi_k_max must be >= 1");
  const bool degiorgi = std::find(checks.names.begin(), checks.names.end(), "degiorgi") != checks.names.end();
  if (degiorgi) {
    // Every level interval [C_k, C_{k+1}) needs a snapshot, and t = 0 is required.
    const std::vector<double> times = all_snapshot_times();
    if (times.empty() || times.front() != 0.0)
      throw std::invalid_argument("output.snapshot_times: degiorgi needs a snapshot at t = 0");
    for (int k = 0; k < checks.degiorgi_k_max; ++k) {
      const double lo = 1.0 - std::ldexp(1.0, -k), hi = 1.0 - std::ldexp(1.0, -(k + 1));
      const bool covered =
          std::any_of(times.begin(), times.end(), [&](double t) { return t > 0.0 && t >= lo && t < hi; });
      if (!covered)
        throw std::invalid_argument("output.snapshot_times: no snapshot in [C_" + std::to_string(k) + ", C_" +
                                    std::to_string(k + 1) + ") for degiorgi_k_max");
    }
  }
  for (const Point& p : tracer_seeds)
    for (int j = 0; j < n; ++j)
      if (!std::isfinite(p[j])) throw std::invalid_argument("tracers.seeds must be finite");
  if (tracer_path.empty()) throw std::invalid_argument("tracers.path must not be empty");
}

bool operator==(const RunConfig& a, const RunConfig& b) { return echo_config(a) == echo_config(b); }

RunConfig parse_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::invalid_argument("config: " + std::string(e.message()) + " at line " + std::to_string(e.line()));
  }
  RunConfig c;
  const auto& sections = schema();
  for (const auto& [section, body] : tree) {
    if (!body.data().empty()) throw std::invalid_argument("config: key '" + section + "' outside a section");
    const auto found = sections.find(section);
    if (found == sections.end()) throw std::invalid_argument("config: unknown section [" + section + "]");
    for (const auto& [key, value] : body) {
      const auto setter = found->second.find(key);
      if (setter == found->second.end())
        throw std::invalid_argument("config: unknown key " + section + "." + key);
      setter->second(c, trim(value.data()), section + "." + key);
    }
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return parse_config(s.str());
}

std::string echo_config(const RunConfig& c) {
  std::ostringstream o;
  o << "[grid]\nn = " << c.n << "\nN = " << c.N << "\nL = " << format_double(c.L) << "\n\n";
  o << "[model]\nalpha = " << format_double(c.model.alpha) << "\nkappa = " << format_double(c.model.kappa)
    << "\ngamma = " << format_double(c.model.gamma) << "\nvelocity_type = " << to_string(c.model.velocity) << "\n\n";
  o << "[time]\nT_end = " << format_double(c.t_end) << "\nc_cfl = " << format_double(c.c_cfl)
    << "\ndt_max = " << format_double(c.dt_max) << "\n\n";
  o << "[stops]\ngrad_factor = " << format_double(c.grad_factor)
    << "\ntail_threshold = " << format_double(c.tail_threshold) << "\n\n";
  o << "[output]\nseries_path = " << c.series_path << "\nrecord_interval = " << format_double(c.record_interval)
    << "\nsnapshot_times = " << join(c.snapshot_times) << "\nsnapshot_cadence = " << format_double(c.snapshot_cadence)
    << "\nsnapshot_dir = " << c.snapshot_dir << "\n\n";
  const InitialData& i = c.initial;
  o << "[initial]\nkind = " << to_string(i.kind) << "\nA = " << format_double(i.A)
    << "\nsigma = " << format_double(i.sigma) << "\nradius = " << format_double(i.radius)
    << "\ncenter = " << (i.center ? point_text(*i.center, c.n) : std::string("auto"))
    << "\nseparation = " << format_double(i.separation) << "\nk_cut = " << i.k_cut
    << "\namplitude = " << format_double(i.amplitude) << "\nseed = " << i.seed << "\n\n";
  std::string names;
  for (std::size_t k = 0; k < c.checks.names.size(); ++k) names += (k ? "," : "") + c.checks.names[k];
  o << "[checks]\nnames = " << names << "\nmass_tolerance = " << format_double(c.checks.mass_tolerance)
    << "\ntail_window = " << format_double(c.checks.tail_window)
    << "\nextrema_rate = " << format_double(c.checks.extrema_rate)
    << "\ndegiorgi_k_max = " << c.checks.degiorgi_k_max << "\n\n";
  std::string seeds;
  for (std::size_t k = 0; k < c.tracer_seeds.size(); ++k) seeds += (k ? ";" : "") + point_text(c.tracer_seeds[k], c.n);
  o << "[tracers]\nseeds = " << seeds << "\nat_maximum = " << (c.tracer_at_maximum ? "true" : "false")
    << "\npath = " << c.tracer_path << "\n";
  return o.str();
}

}  // namespace nlt

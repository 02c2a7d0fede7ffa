#include "mmwave/cli.hpp"
#include "mmwave/error.hpp"
#include "mmwave/material_io.hpp"
#include "mmwave/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

namespace mmw {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

// Writes to the --out file when given, else to the caller's stream.
class Sink {
public:
  Sink(const std::string &path, std::ostream &fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw MaterialFileError("cannot write '" + path + "'");
      os_ = file_.get();
    }
  }
  std::ostream &os() { return *os_; }

private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream *os_;
};

MicromorphicMaterial micromorphic_from(const Medium &m, const std::string &what) {
  if (!std::holds_alternative<MicromorphicMaterial>(m))
    throw Error(ErrorKind::UnsupportedPair, what + " must be a micromorphic material");
  return validate(std::get<MicromorphicMaterial>(m));
}

CauchyMaterial cauchy_from(const Medium &m, const std::string &what) {
  if (!std::holds_alternative<CauchyMaterial>(m))
    throw Error(ErrorKind::UnsupportedPair, what + " must be a Cauchy material");
  return validate(std::get<CauchyMaterial>(m));
}

std::vector<double> grid(double lo, double hi, int n, const std::string &spacing) {
  if (!(lo < hi) || n < 2) throw CLI::ValidationError("sweep", "need min < max and samples >= 2");
  if (spacing == "log") {
    if (!(lo > 0)) throw CLI::ValidationError("sweep", "log spacing needs min > 0");
    return log_grid(lo, hi, n);
  }
  return lin_grid(lo, hi, n);
}

// Frequency window wide enough to contain every cut-off and asymptote.
std::vector<double> default_gap_grid(const MicromorphicMaterial &m) {
  const CharacteristicQuantities q = characteristic_quantities(m);
  const double hi = std::max({q.omega_s, q.omega_p, q.omega_r, q.omega_l});
  const double lo = std::min({q.omega_s, q.omega_l, q.omega_t});
  return log_grid(1e-2 * lo, 1e1 * hi, 4000);
}

int cmd_validate(const std::string &path, std::ostream &out) {
  const Medium medium = load_material(path);
  if (const auto *c = std::get_if<CauchyMaterial>(&medium)) {
    validate(*c);
    const CauchySpeeds s = cauchy_speeds(*c);
    out << "material: valid (cauchy)\n";
    out << "c_l = " << num(s.c_l) << " m/s\n";
    out << "c_t = " << num(s.c_t) << " m/s\n";
    return ExitOk;
  }
  const MicromorphicMaterial m = validate(std::get<MicromorphicMaterial>(medium));
  const CharacteristicQuantities q = characteristic_quantities(m);
  out << "material: valid (" << to_string(m.flavor) << ")\n";
  out << "omega_s = " << num(q.omega_s) << " rad/s\n";
  out << "omega_r = " << num(q.omega_r) << " rad/s\n";
  out << "omega_p = " << num(q.omega_p) << " rad/s\n";
  out << "omega_l = " << num(q.omega_l) << " rad/s\n";
  out << "omega_t = " << num(q.omega_t) << " rad/s (sqrt(mu_micro/eta))\n";
  out << "omega_t_doubled = " << num(q.omega_t_doubled) << " rad/s (sqrt(2 mu_micro/eta))\n";
  out << (m.flavor == Flavor::Mindlin ? "c_g = " : "c_m = ") << num(q.c_m) << " m/s\n";
  out << "c_p = " << num(q.c_p) << " m/s\n";
  out << "c_s = " << num(q.c_s) << " m/s\n";
  if (m.flavor == Flavor::InternalVariable) {
    const InternalAsymptotes a = internal_variable_asymptotes(m);
    out << "omega_l1 = " << num(a.omega_l1) << " rad/s\n";
    out << "omega_l2 = " << num(a.omega_l2) << " rad/s\n";
    out << "omega_t1 = " << num(a.omega_t1) << " rad/s\n";
    out << "omega_t2 = " << num(a.omega_t2) << " rad/s\n";
  }
  if (m.flavor == Flavor::Relaxed && q.omega_l < q.omega_s)
    out << "predicted_gap = [" << num(q.omega_l) << ", " << num(q.omega_s) << "] rad/s\n";
  const std::vector<BandGap> gaps = band_gap(m, default_gap_grid(m));
  out << "band_gaps =";
  if (gaps.empty()) out << " none";
  for (const BandGap &g : gaps) out << " [" << num(g.lower) << ", " << num(g.upper) << "]";
  out << " rad/s\n";
  return ExitOk;
}

struct DispersionArgs {
  std::string material, model, family = "all", out;
  double kmin = 0, kmax = 2000;
  int samples = 500;
};

int cmd_dispersion(const DispersionArgs &a, std::ostream &fallback, std::ostream &err) {
  Medium medium = load_material(a.material);
  if (auto *m = std::get_if<MicromorphicMaterial>(&medium); m && !a.model.empty()) {
    m->flavor = parse_flavor(a.model);
    if (m->flavor == Flavor::InternalVariable) m->char_length = 0;
  }
  const MicromorphicMaterial m = micromorphic_from(medium, "--material");

  std::vector<WaveFamily> fams;
  for (WaveFamily f : all_families)
    if (a.family == "all" || a.family == to_string(f)) fams.push_back(f);
  if (fams.empty()) throw CLI::ValidationError("--family", "unknown family " + a.family);

  const std::vector<DispersionRow> rows =
      dispersion_sweep(m, fams, grid(a.kmin, a.kmax, a.samples, "lin"), worker_count());
  Sink sink(a.out, fallback);
  std::ostream &os = sink.os();
  os << "# k[1/m]";
  for (WaveFamily f : fams)
    for (int c = 0; c < dispersion_columns(f); ++c)
      os << "," << to_string(f) << (is_coupled(f) ? "_" + std::to_string(c + 1) : "") << "[rad/s]";
  os << "\n";
  for (const DispersionRow &r : rows) {
    if (!r.ok) err << "warning: k=" << num(r.k) << ": " << r.error << "\n";
    os << num(r.k);
    for (double w : r.omegas) os << "," << num(w);
    os << "\n";
  }
  return ExitOk;
}

struct ReflectArgs {
  std::string cauchy, micro, connection = "fixed-micro", incident = "P", spacing = "log", out;
  std::string a1, a2, a3;
  double wmin = 1e4, wmax = 1e6;
  int samples = 800;
};

int cmd_reflect(const ReflectArgs &a, std::ostream &fallback, std::ostream &err) {
  const CauchyMaterial c = cauchy_from(load_material(a.cauchy), "--cauchy");
  const MicromorphicMaterial m = micromorphic_from(load_material(a.micro), "--micro");
  const std::optional<ConnectionType> con = parse_connection(a.connection);
  if (!con) throw CLI::ValidationError("--connection", "unknown connection " + a.connection);

  Eigen::Vector3cd alpha;
  if (a.incident == "P") alpha << 1, 0, 0;
  else if (a.incident == "S") alpha << 0, 1, 0;
  else if (a.incident == "PS") alpha << 1, 1, 1;
  else throw CLI::ValidationError("--incident", "expected P, S or PS");
  const std::string *overrides[3] = {&a.a1, &a.a2, &a.a3};
  for (int i = 0; i < 3; ++i) {
    if (overrides[i]->empty()) continue;
    const std::optional<cd> z = parse_complex(*overrides[i]);
    if (!z) throw CLI::ValidationError("--alpha", "cannot parse complex '" + *overrides[i] + "'");
    alpha(i) = *z;
  }
  if (alpha.isZero(0)) throw CLI::ValidationError("--alpha", "incident amplitudes are all zero");

  const std::vector<ReflectRow> rows =
      reflect_sweep(c, m, *con, alpha, grid(a.wmin, a.wmax, a.samples, a.spacing), worker_count());
  Sink sink(a.out, fallback);
  std::ostream &os = sink.os();
  os << "# omega[rad/s],R[-],T[-],J_i[W/m^2],J_r[W/m^2],J_t[W/m^2],residual[-],"
        "n_propagating_transmitted[-]\n";
  int failed = 0;
  for (const ReflectRow &r : rows) {
    if (!r.ok) {
      ++failed;
      err << "warning: omega=" << num(r.omega) << ": " << r.error << "\n";
    }
    os << num(r.omega) << "," << num(r.budget.R) << "," << num(r.budget.T) << "," << num(r.budget.J_i)
       << "," << num(r.budget.J_r) << "," << num(r.budget.J_t) << "," << num(r.residual) << ","
       << r.n_propagating << "\n";
  }
  return failed == static_cast<int>(rows.size()) ? ExitSolver : ExitOk;
}

struct BandgapArgs {
  std::string material, spacing = "log", out;
  double wmin = 1e4, wmax = 1e6;
  int samples = 2000;
};

int cmd_bandgap(const BandgapArgs &a, std::ostream &fallback) {
  const Medium medium = load_material(a.material);
  const std::vector<double> g = grid(a.wmin, a.wmax, a.samples, a.spacing);
  std::vector<BandGap> gaps;
  if (const auto *c = std::get_if<CauchyMaterial>(&medium))
    gaps = band_gap(validate(*c), g);
  else
    gaps = band_gap(validate(std::get<MicromorphicMaterial>(medium)), g);
  nlohmann::json j = nlohmann::json::array();
  for (const BandGap &b : gaps) j.push_back({{"lower", b.lower}, {"upper", b.upper}});
  Sink sink(a.out, fallback);
  sink.os() << j.dump(2) << "\n";
  return ExitOk;
}

} // namespace

std::optional<cd> parse_complex(const std::string &raw) {
  std::string s;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) return std::nullopt;

  auto real_of = [](const std::string &t) -> std::optional<double> {
    if (t.empty()) return std::nullopt;
    size_t used = 0;
    try {
      const double v = std::stod(t, &used);
      if (used != t.size()) return std::nullopt;
      return v;
    } catch (...) {
      return std::nullopt;
    }
  };
  auto imag_of = [&](std::string t) -> std::optional<double> {
    t.pop_back(); // trailing 'i'
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return real_of(t);
  };

  if (s.back() != 'i') {
    const auto r = real_of(s);
    return r ? std::optional<cd>(cd(*r, 0)) : std::nullopt;
  }
  // Split at the last sign that is not the leading one and not an exponent sign.
  size_t split = std::string::npos;
  for (size_t p = s.size() - 1; p > 0; --p)
    if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') {
      split = p;
      break;
    }
  if (split == std::string::npos) {
    const auto im = imag_of(s);
    return im ? std::optional<cd>(cd(0, *im)) : std::nullopt;
  }
  const auto re = real_of(s.substr(0, split));
  const auto im = imag_of(s.substr(split));
  if (!re || !im) return std::nullopt;
  return cd(*re, *im);
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Plane-wave dispersion and interface scattering for micromorphic media", "mmwave"};
  app.require_subcommand(1);

  std::string validate_file;
  auto *v = app.add_subcommand("validate", "check a material file and print characteristic quantities");
  v->add_option("file", validate_file, "material JSON")->required();

  DispersionArgs da;
  auto *d = app.add_subcommand("dispersion", "omega(k) branches per family as CSV");
  d->add_option("--material", da.material, "micromorphic material JSON")->required();
  d->add_option("--model", da.model, "override flavor")->check(CLI::IsMember({"relaxed", "mindlin", "internal"}));
  d->add_option("--family", da.family, "all|L|TY|TZ|U4|U5|U6");
  d->add_option("--kmin", da.kmin, "1/m");
  d->add_option("--kmax", da.kmax, "1/m");
  d->add_option("--samples", da.samples);
  d->add_option("--out", da.out, "CSV path (default stdout)");

  ReflectArgs ra;
  auto *r = app.add_subcommand("reflect", "reflection/transmission sweep over omega as CSV");
  r->add_option("--cauchy", ra.cauchy, "Cauchy material JSON (x1 < 0)")->required();
  r->add_option("--micro", ra.micro, "micromorphic material JSON (x1 > 0)")->required();
  r->add_option("--connection", ra.connection,
                "fixed-micro|free-micro|free|fixed|free-macro-fixed-micro|fixed-macro-free-micro");
  r->add_option("--incident", ra.incident, "P|S|PS");
  r->add_option("--alpha1", ra.a1, "override incident longitudinal amplitude, e.g. 1+0.5i");
  r->add_option("--alpha2", ra.a2, "override incident transverse (x2) amplitude");
  r->add_option("--alpha3", ra.a3, "override incident transverse (x3) amplitude");
  r->add_option("--wmin", ra.wmin, "rad/s");
  r->add_option("--wmax", ra.wmax, "rad/s");
  r->add_option("--samples", ra.samples);
  r->add_option("--spacing", ra.spacing)->check(CLI::IsMember({"log", "lin"}));
  r->add_option("--out", ra.out, "CSV path (default stdout)");

  BandgapArgs ba;
  auto *b = app.add_subcommand("bandgap", "complete band gaps as JSON");
  b->add_option("--material", ba.material, "material JSON")->required();
  b->add_option("--wmin", ba.wmin, "rad/s");
  b->add_option("--wmax", ba.wmax, "rad/s");
  b->add_option("--samples", ba.samples);
  b->add_option("--spacing", ba.spacing)->check(CLI::IsMember({"log", "lin"}));
  b->add_option("--out", ba.out, "JSON path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (v->parsed()) return cmd_validate(validate_file, out);
    if (d->parsed()) return cmd_dispersion(da, out, err);
    if (r->parsed()) return cmd_reflect(ra, out, err);
    if (b->parsed()) return cmd_bandgap(ba, out);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return ExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return ExitOk;
  } catch (const CLI::Error &e) {
    err << "error: " << e.what() << "\n";
    return ExitIo;
  } catch (const MaterialFileError &e) {
    err << "error: " << e.what() << "\n";
    return ExitIo;
  } catch (const Error &e) {
    const bool material = e.kind() == ErrorKind::NonPositiveDefinite ||
                          e.kind() == ErrorKind::DegenerateModel ||
                          e.kind() == ErrorKind::UnsupportedPair || e.kind() == ErrorKind::ZeroSpeed;
    err << (material ? "invalid material: " : "solver failure: ") << e.what() << "\n";
    return material ? ExitInvalidMaterial : ExitSolver;
  }
  return ExitIo;
}

} // namespace mmw

#include "semiabel/job.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "semiabel/error.hpp"
#include "semiabel/pairing.hpp"

namespace semiabel {

namespace {

[[noreturn]] void schema(const std::string& pointer, const std::string& what) {
  throw Error(ErrorCode::SchemaError, "at " + (pointer.empty() ? std::string("/") : pointer) +
                                          ": " + what);
}

const Json& member(const Json& obj, const std::string& key, const std::string& ptr) {
  if (!obj.is_object() || !obj.contains(key)) schema(ptr + "/" + key, "missing");
  return obj.at(key);
}

double read_real(const Json& j, const std::string& ptr) {
  if (!j.is_number()) schema(ptr, "expected a number");
  return j.get<double>();
}

long long read_int(const Json& j, const std::string& ptr) {
  if (!j.is_number_integer()) schema(ptr, "expected an integer");
  return j.get<long long>();
}

cplx read_complex(const Json& j, const std::string& ptr) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_object()) schema(ptr, "expected a number or {re, im}");
  for (const auto& [k, v] : j.items()) {
    if (k != "re" && k != "im") schema(ptr + "/" + k, "unexpected key");
  }
  return {read_real(member(j, "re", ptr), ptr + "/re"), read_real(member(j, "im", ptr), ptr + "/im")};
}

EllipticPoint read_point(const Json& j, const std::string& ptr) {
  if (j.is_string()) {
    if (j.get<std::string>() != "O") schema(ptr, "the only string point is \"O\"");
    return EllipticPoint::identity();
  }
  if (!j.is_object()) schema(ptr, "expected {x, y} or \"O\"");
  return EllipticPoint::affine(read_complex(member(j, "x", ptr), ptr + "/x"),
                               read_complex(member(j, "y", ptr), ptr + "/y"));
}

void check_on_curve(const EllipticPoint& P, const Lattice& L, const std::string& ptr) {
  if (!on_curve(P, eisenstein_invariants(L))) {
    throw Error(ErrorCode::NotOnCurve, "at " + ptr + ": point is not on the curve");
  }
}

struct ReadExtension {
  ExtensionParam param;
  std::optional<EllipticPoint> point;
};

ReadExtension read_extension(const Json& j, const std::string& ptr, const Lattice& L) {
  if (j.is_object() && j.contains("log")) {
    return {extension_from_log(read_complex(j.at("log"), ptr + "/log"), L), std::nullopt};
  }
  const EllipticPoint Q = read_point(j, ptr);
  check_on_curve(Q, L, ptr);
  return {extension_from_point(Q, L), Q};
}

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& ptr) {
  if (!j.is_object()) schema(ptr, "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) schema(ptr + "/" + k, "unexpected key");
  }
}

const Json& array_member(const Json& doc, const std::string& key) {
  const Json& a = member(doc, key, "");
  if (!a.is_array()) schema("/" + key, "expected an array");
  return a;
}

Json point_json(const EllipticPoint& P) {
  if (P.is_identity()) return "O";
  return Json{{"x", complex_json(P.x)}, {"y", complex_json(P.y)}};
}

Json certificate_json(const LabelledCertificate& c) {
  return Json{{"context", c.context},
              {"coefficients", c.certificate.coefficients},
              {"residual", c.certificate.residual},
              {"height", c.certificate.height},
              {"verified_at_higher_precision", c.certificate.verified_at_higher_precision}};
}

Json report_json(const ClassificationReport& R) {
  Json j;
  j["dim_B"] = R.dim_B;
  j["dim_B_vstar"] = R.dim_B_vstar;
  j["dim_B_Q"] = R.dim_B_Q;
  j["dim_Z1"] = R.dim_Z1;
  j["dim_Z1_prime"] = R.dim_Z1_prime;
  j["dim_UR"] = R.dim_UR;
  j["dim_Gal"] = R.dim_Gal;
  j["dim_Gal_A"] = R.dim_Gal_A;
  j["table_row"] = {{"index", static_cast<int>(R.table_row)},
                    {"name", table_row_name(R.table_row)}};
  j["cm"] = {{"cm", R.cm.cm},
             {"discriminant", R.cm.cm ? Json(R.cm.discriminant) : Json(nullptr)},
             {"from_override", R.cm.from_override}};
  j["deficient"] = R.deficient ? Json(*R.deficient) : Json(nullptr);
  j["bounds"] = R.bounds;
  j["confidence"] = confidence_name(R.confidence);
  j["p_torsion"] = R.p_torsion;
  j["q_torsion"] = R.q_torsion;
  j["r_torsion"] = R.r_torsion ? Json(*R.r_torsion) : Json(nullptr);
  Json certs = Json::array();
  for (const auto& c : R.certificates) certs.push_back(certificate_json(c));
  j["certificates"] = certs;
  j["notes"] = R.notes;
  return j;
}

void write_json(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(indent * 2, ' '), pad_in((indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad_in << Json(k).dump() << ": ";
        write_json(os, v, indent + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad_in;
        write_json(os, j[i], indent + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        os << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << buf;
      return;
    }
    default:
      os << j.dump();
  }
}

void write_text(std::ostringstream& os, const Json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() && v.size() == 2 && v.contains("re") && v.contains("im")) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.17g %+.17gi", v["re"].get<double>(), v["im"].get<double>());
        os << prefix << k << ": " << buf << "\n";
      } else if (v.is_structured()) {
        os << prefix << k << ":\n";
        write_text(os, v, prefix + "  ");
      } else {
        std::ostringstream tmp;
        write_json(tmp, v, 0);
        os << prefix << k << ": " << tmp.str() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const Json& v = j[i];
      if (v.is_structured()) {
        os << prefix << "[" << i << "]\n";
        write_text(os, v, prefix + "  ");
      } else {
        std::ostringstream tmp;
        write_json(tmp, v, 0);
        os << prefix << "- " << tmp.str() << "\n";
      }
    }
  }
}

Json run_periods(const JobConfig& cfg, const Lattice& L) {
  const CurveInvariants c = eisenstein_invariants(L);
  const QuasiPeriods e = quasi_periods(L);
  const auto roots = cubic_roots(c);
  const CMInfo cm = detect_cm(L, cfg.settings.max_height, cfg.settings.tol);
  Json j;
  j["lattice"] = {{"omega1", complex_json(L.omega1())},
                  {"omega2", complex_json(L.omega2())},
                  {"reduced_omega1", complex_json(L.reduced_omega1())},
                  {"reduced_omega2", complex_json(L.reduced_omega2())},
                  {"reduced_tau", complex_json(L.reduced_tau())},
                  {"covolume", L.covolume()},
                  {"orientation_flipped", L.orientation_flipped()}};
  j["invariants"] = {{"g2", complex_json(c.g2)},
                     {"g3", complex_json(c.g3)},
                     {"discriminant", complex_json(discriminant(c))}};
  j["quasi_periods"] = {{"eta1", complex_json(e.eta1)}, {"eta2", complex_json(e.eta2)}};
  j["legendre_residual"] = std::abs(e.eta1 * L.omega2() - e.eta2 * L.omega1() - kTwoPiI);
  j["cubic_roots"] = Json::array({complex_json(roots[0]), complex_json(roots[1]),
                                  complex_json(roots[2])});
  j["theta_piA"] = complex_json(theta_normalization(L).piA);
  j["cm"] = {{"cm", cm.cm}, {"discriminant", cm.cm ? Json(cm.discriminant) : Json(nullptr)}};
  j["notes"] = Json::array({"dual basis omega_i* = -omega_i / covolume, so Im(conj(omega_i) omega_j*) = [[0,-1],[1,0]]"});
  return j;
}

Json run_eval(const JobConfig& cfg, const Lattice& L) {
  const Json& zs = array_member(cfg.payload, "z");
  Json out = Json::array();
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const cplx z = read_complex(zs[i], "/z/" + std::to_string(i));
    const WpPair p = wp_both(z, L);
    out.push_back({{"z", complex_json(z)},
                   {"wp", complex_json(p.wp)},
                   {"wp_prime", complex_json(p.wp_prime)},
                   {"zeta", complex_json(zeta_w(z, L))},
                   {"sigma", complex_json(sigma_w(z, L))},
                   {"theta", complex_json(theta_normalized(z, L))},
                   {"eta_linear", complex_json(eta_linear(z, L))}});
  }
  return Json{{"values", out}};
}

Json run_expg(const JobConfig& cfg, const Lattice& L) {
  const ReadExtension Q = read_extension(member(cfg.payload, "q", ""), "/q", L);
  const Json& samples = array_member(cfg.payload, "samples");
  Json out = Json::array();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::string ptr = "/samples/" + std::to_string(i);
    const cplx z = read_complex(member(samples[i], "z", ptr), ptr + "/z");
    const cplx t = read_complex(member(samples[i], "t", ptr), ptr + "/t");
    const SemiAbelianPoint R = exp_G(z, t, Q.param, L);
    out.push_back({{"z", complex_json(z)},
                   {"t", complex_json(t)},
                   {"base", point_json(R.base)},
                   {"fiber", complex_json(R.fiber)}});
  }
  const auto qqp = quasi_quasi_periods(Q.param, L);
  return Json{{"q", complex_json(Q.param.q)},
              {"quasi_quasi_periods", Json::array({complex_json(qqp[0]), complex_json(qqp[1])})},
              {"values", out},
              {"notes", Json::array({"kernel of exp_G generated by (omega_i, -qqp_i) and (0, 2 pi i)"})}};
}

Json run_logg(const JobConfig& cfg, const Lattice& L) {
  const ReadExtension Q = read_extension(member(cfg.payload, "q", ""), "/q", L);
  const Json& pts = array_member(cfg.payload, "points");
  Json out = Json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string ptr = "/points/" + std::to_string(i);
    const EllipticPoint base = read_point(member(pts[i], "base", ptr), ptr + "/base");
    check_on_curve(base, L, ptr + "/base");
    const cplx fiber = read_complex(member(pts[i], "fiber", ptr), ptr + "/fiber");
    const GeneralizedSemiAbelianLog g = generalized_log_G({base, fiber}, Q.param, L);
    out.push_back({{"z", complex_json(g.z)},
                   {"zeta", complex_json(g.w)},
                   {"t", complex_json(g.t)},
                   {"at_identity", g.at_identity}});
  }
  return Json{{"q", complex_json(Q.param.q)},
              {"values", out},
              {"notes", Json::array({"z is the principal logarithm, real coordinates in [0,1)",
                                     "second-kind value is zeta(z) at that logarithm",
                                     "t is the principal log of fiber / f_q(z); other branches differ by the exp_G kernel"})}};
}

Json run_pairing(const JobConfig& cfg, const Lattice& L) {
  const Json& pairs = array_member(cfg.payload, "pairs");
  Json out = Json::array();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string ptr = "/pairs/" + std::to_string(i);
    check_keys(pairs[i], {"z", "z_star", "N"}, ptr);
    const cplx z = read_complex(member(pairs[i], "z", ptr), ptr + "/z");
    const cplx zs = read_complex(member(pairs[i], "z_star", ptr), ptr + "/z_star");
    const RatioValues r = ratio_f_tilde(z, zs, L);
    Json e{{"z", complex_json(z)},
           {"z_star", complex_json(zs)},
           {"weil", complex_json(r.weil)},
           {"weil_from_coordinates", complex_json(r.coordinates)},
           {"f_tilde_ratio", complex_json(r.ratio)},
           {"exponential", complex_json(r.exponential)},
           {"ratio_from_sigma", r.ratio_from_sigma}};
    if (pairs[i].contains("N")) {
      const long long N = read_int(pairs[i]["N"], ptr + "/N");
      if (N < 1) schema(ptr + "/N", "must be positive");
      e["N"] = N;
      e["torsion_weil"] = complex_json(torsion_weil_pairing(z, zs, N, L).value);
    }
    out.push_back(e);
  }
  return Json{{"values", out},
              {"notes", Json::array({"z_star is read in the dual frame and pulled back by z* -> covolume * z*"})}};
}

}  // namespace

Json complex_json(cplx z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

std::optional<Task> parse_task(std::string_view name) {
  static const std::pair<std::string_view, Task> names[] = {
      {"periods", Task::Periods}, {"eval", Task::Eval},         {"expg", Task::ExpG},
      {"logg", Task::LogG},       {"pairing", Task::Pairing},   {"classify", Task::Classify},
      {"bounds", Task::Bounds},   {"verify", Task::Verify}};
  for (const auto& [n, t] : names) {
    if (n == name) return t;
  }
  return std::nullopt;
}

std::string task_name(Task t) {
  switch (t) {
    case Task::Periods: return "periods";
    case Task::Eval: return "eval";
    case Task::ExpG: return "expg";
    case Task::LogG: return "logg";
    case Task::Pairing: return "pairing";
    case Task::Classify: return "classify";
    case Task::Bounds: return "bounds";
    case Task::Verify: return "verify";
  }
  return "verify";
}

JobConfig parse_config(const Json& doc, const ConfigOverrides& o) {
  check_keys(doc, {"task", "curve", "tol", "n_max", "max_height", "seed", "z", "q", "samples",
                   "points", "pairs", "motive", "comment"},
             "");
  JobConfig cfg;
  std::optional<Task> file_task;
  if (doc.contains("task")) {
    if (!doc["task"].is_string()) schema("/task", "expected a string");
    file_task = parse_task(doc["task"].get<std::string>());
    if (!file_task) schema("/task", "unknown task");
  }
  if (o.task && file_task && *o.task != *file_task) {
    schema("/task", "disagrees with the task given on the command line");
  }
  if (!o.task && !file_task) schema("/task", "missing");
  cfg.task = o.task ? *o.task : *file_task;

  const Json& curve = member(doc, "curve", "");
  if (!curve.is_object()) schema("/curve", "expected an object");
  const bool has_inv = curve.contains("g2") || curve.contains("g3");
  const bool has_lat = curve.contains("lattice");
  if (has_inv && has_lat) {
    throw Error(ErrorCode::ConflictingCurveSpec, "curve gives both invariants and a lattice");
  }
  if (!has_inv && !has_lat) schema("/curve", "needs {g2, g3} or {lattice}");
  if (has_inv) {
    check_keys(curve, {"g2", "g3"}, "/curve");
    cfg.curve.from_invariants = true;
    cfg.curve.invariants = {read_complex(member(curve, "g2", "/curve"), "/curve/g2"),
                            read_complex(member(curve, "g3", "/curve"), "/curve/g3")};
  } else {
    check_keys(curve, {"lattice"}, "/curve");
    const Json& lat = curve["lattice"];
    check_keys(lat, {"w1", "w2"}, "/curve/lattice");
    cfg.curve.from_invariants = false;
    cfg.curve.w1 = read_complex(member(lat, "w1", "/curve/lattice"), "/curve/lattice/w1");
    cfg.curve.w2 = read_complex(member(lat, "w2", "/curve/lattice"), "/curve/lattice/w2");
  }

  if (o.env_tol) cfg.settings.tol = *o.env_tol;
  if (doc.contains("tol")) cfg.settings.tol = read_real(doc["tol"], "/tol");
  if (o.tol) cfg.settings.tol = *o.tol;
  if (!(cfg.settings.tol > 0.0) || !std::isfinite(cfg.settings.tol)) {
    schema("/tol", "tolerance must be positive");
  }
  if (doc.contains("n_max")) cfg.settings.n_max = read_int(doc["n_max"], "/n_max");
  if (cfg.settings.n_max < 1) schema("/n_max", "must be positive");
  if (doc.contains("max_height")) {
    cfg.settings.max_height = read_int(doc["max_height"], "/max_height");
  }
  if (cfg.settings.max_height < 1) schema("/max_height", "must be positive");
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) schema("/seed", "expected a non-negative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (o.seed) cfg.seed = *o.seed;
  cfg.json_output = o.json_output;

  switch (cfg.task) {
    case Task::Eval: member(doc, "z", ""); break;
    case Task::ExpG: member(doc, "q", ""); member(doc, "samples", ""); break;
    case Task::LogG: member(doc, "q", ""); member(doc, "points", ""); break;
    case Task::Pairing: member(doc, "pairs", ""); break;
    case Task::Classify:
    case Task::Bounds: member(doc, "motive", ""); break;
    default: break;
  }
  cfg.payload = doc;
  return cfg;
}

JobConfig parse_config_text(const std::string& text, const ConfigOverrides& o) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("at /: malformed JSON: ") + e.what());
  }
  return parse_config(doc, o);
}

Lattice lattice_of(const CurveSpec& c) {
  if (c.from_invariants) return periods_from_invariants(c.invariants);
  return make_lattice(c.w1, c.w2);
}

OneMotiveElliptic parse_motive(const Json& doc, const std::string& ptr, const Lattice& L,
                               const CurveSpec& curve) {
  check_keys(doc, {"extension_params", "points", "cm_override"}, ptr);
  OneMotiveElliptic M(L);
  M.curve = curve.from_invariants ? curve.invariants : eisenstein_invariants(L);
  M.curve_exact = curve.from_invariants;
  if (doc.contains("extension_params")) {
    const Json& e = doc["extension_params"];
    if (!e.is_array()) schema(ptr + "/extension_params", "expected an array");
    for (std::size_t k = 0; k < e.size(); ++k) {
      const ReadExtension r = read_extension(e[k], ptr + "/extension_params/" + std::to_string(k), L);
      M.extension_params.push_back(r.param);
      M.extension_points.push_back(r.point);
    }
  }
  const std::size_t s = M.extension_params.size();
  const Json& pts = member(doc, "points", ptr);
  if (!pts.is_array() || pts.empty()) schema(ptr + "/points", "expected a non-empty array");
  for (std::size_t l = 0; l < pts.size(); ++l) {
    const std::string pp = ptr + "/points/" + std::to_string(l);
    MotivePoint P;
    if (pts[l].is_object() && pts[l].contains("log")) {
      // {"log": {"z": c, "t": c | [c...]}} builds the point through exp_G
      check_keys(pts[l], {"log"}, pp);
      const Json& lg = pts[l]["log"];
      check_keys(lg, {"z", "t"}, pp + "/log");
      const cplx z = read_complex(member(lg, "z", pp + "/log"), pp + "/log/z");
      std::vector<cplx> ts;
      if (lg.contains("t")) {
        if (lg["t"].is_array()) {
          for (std::size_t k = 0; k < lg["t"].size(); ++k) {
            ts.push_back(read_complex(lg["t"][k], pp + "/log/t/" + std::to_string(k)));
          }
        } else {
          ts.push_back(read_complex(lg["t"], pp + "/log/t"));
        }
      }
      if (ts.size() != s) schema(pp + "/log/t", "needs one value per extension parameter");
      P.base = point_from_log(z, L);
      for (std::size_t k = 0; k < s; ++k) P.fibers.push_back(exp_G(z, ts[k], M.extension_params[k], L).fiber);
    } else {
      check_keys(pts[l], {"base", "fiber", "fibers"}, pp);
      P.base = read_point(member(pts[l], "base", pp), pp + "/base");
      check_on_curve(P.base, L, pp + "/base");
      if (pts[l].contains("fibers")) {
        const Json& f = pts[l]["fibers"];
        if (!f.is_array()) schema(pp + "/fibers", "expected an array");
        for (std::size_t k = 0; k < f.size(); ++k) {
          P.fibers.push_back(read_complex(f[k], pp + "/fibers/" + std::to_string(k)));
        }
      } else if (pts[l].contains("fiber")) {
        P.fibers.push_back(read_complex(pts[l]["fiber"], pp + "/fiber"));
      }
      if (P.fibers.size() != s) schema(pp, "needs one fiber per extension parameter");
    }
    M.points.push_back(P);
  }
  if (doc.contains("cm_override")) {
    M.cm_override = read_int(doc["cm_override"], ptr + "/cm_override");
    if (*M.cm_override > 0) schema(ptr + "/cm_override", "must be 0 or a negative discriminant");
  }
  return M;
}

JobResult run_job(const JobConfig& cfg) {
  JobResult res;
  Json& d = res.document;
  d["task"] = task_name(cfg.task);
  d["seed"] = cfg.seed;
  d["settings"] = {{"tol", cfg.settings.tol},
                   {"n_max", cfg.settings.n_max},
                   {"max_height", cfg.settings.max_height}};
  if (cfg.task == Task::Verify) {
    const VerificationReport r = run_verification_suite(cfg);
    d["verification"] = to_json(r);
    d["status"] = r.pass ? "pass" : "fail";
    res.exit_code = r.pass ? 0 : 2;
    return res;
  }
  const Lattice L = lattice_of(cfg.curve);
  switch (cfg.task) {
    case Task::Periods: d["result"] = run_periods(cfg, L); break;
    case Task::Eval: d["result"] = run_eval(cfg, L); break;
    case Task::ExpG: d["result"] = run_expg(cfg, L); break;
    case Task::LogG: d["result"] = run_logg(cfg, L); break;
    case Task::Pairing: d["result"] = run_pairing(cfg, L); break;
    case Task::Classify: {
      const OneMotiveElliptic M = parse_motive(cfg.payload.at("motive"), "/motive", L, cfg.curve);
      d["result"] = report_json(motivic_galois_dims(M, cfg.settings));
      break;
    }
    case Task::Bounds: {
      const OneMotiveElliptic M = parse_motive(cfg.payload.at("motive"), "/motive", L, cfg.curve);
      const ClassificationReport R = motivic_galois_dims(M, cfg.settings);
      d["result"] = {{"bounds", R.bounds},
                     {"dim_B", R.dim_B},
                     {"dim_B_Q", R.dim_B_Q},
                     {"dim_Z1", R.dim_Z1},
                     {"dim_Gal_A", R.dim_Gal_A},
                     {"confidence", confidence_name(R.confidence)}};
      break;
    }
    case Task::Verify: break;
  }
  d["status"] = "pass";
  return res;
}

std::string dump_json(const Json& j) {
  std::ostringstream os;
  write_json(os, j, 0);
  os << "\n";
  return os.str();
}

std::string render_text(const Json& j) {
  std::ostringstream os;
  write_text(os, j, "");
  return os.str();
}

}  // namespace semiabel

#include "hzeta/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "hzeta/certify.hpp"
#include "hzeta/counting.hpp"
#include "hzeta/errors.hpp"
#include "hzeta/estimator.hpp"
#include "hzeta/zero_search.hpp"
#include "hzeta/zero_table.hpp"

namespace hzeta::cli {
namespace {

using Record = nlohmann::ordered_json;

// Verification or certification outcome that maps to an exit code.
struct Outcome {
  Record record;
  int code = kSuccess;
};

std::string dec(const Real& x) { return x.to_roundtrip_string(); }

std::string dec(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Record estimate_record(const HEstimate& e) {
  Record r;
  r["method"] = to_string(e.method);
  r["shift"] = e.hassani_shifted ? "hassani" : "none";
  r["T"] = dec(e.T.midpoint());
  r["T_radius"] = dec(e.T.radius());
  r["n_zeros"] = std::to_string(e.n_zeros);
  r["estimate"] = dec(e.value.midpoint());
  r["radius"] = dec(e.value.radius());
  r["tail_bound"] = dec(e.tail_bound);
  r["total_lower"] = dec(e.total.lower());
  r["total_upper"] = dec(e.total.upper());
  r["display"] = e.value.midpoint_fixed(12);
  r["rigorous"] = e.rigorous;
  return r;
}

ZeroTable load_table(const RunConfig& cfg) {
  if (cfg.zeros_path.empty()) throw CLI::ValidationError("--zeros", "a zero table is required");
  return load_zero_table(cfg.zeros_path);
}

void warn_if_uncertified(const ZeroTable& t, std::ostream& err) {
  if (t.is_certified()) return;
  err << "warning: zero table is not certified by a Turing-window certificate"
      << (t.certificate ? " (external_trusted)" : "") << "; results are not rigorous\n";
}

std::string heading(const std::string& title) { return "== " + title + " =="; }

// ---- text rendering, always from the record ----

std::string render_estimate_text(const Record& r) {
  std::ostringstream os;
  os << "method:      " << r["method"].get<std::string>();
  if (r["shift"] == "hassani") os << " (shifted by log^2(2pi)/(4pi))";
  os << "\n";
  os << "T:           " << r["T"].get<std::string>() << " +/- " << r["T_radius"].get<std::string>() << "\n";
  os << "n_zeros:     " << r["n_zeros"].get<std::string>() << "\n";
  os << "estimate:    " << r["display"].get<std::string>() << "\n";
  os << "value:       " << r["estimate"].get<std::string>() << " +/- " << r["radius"].get<std::string>() << "\n";
  os << "tail_bound:  " << r["tail_bound"].get<std::string>() << "\n";
  os << "total:       [" << r["total_lower"].get<std::string>() << ", " << r["total_upper"].get<std::string>()
     << "]\n";
  if (!r["rigorous"].get<bool>()) os << "note:        not rigorous\n";
  return os.str();
}

std::string render_text(const Record& rec) {
  const std::string cmd = rec["command"];
  std::ostringstream os;
  if (cmd == "estimate") {
    os << render_estimate_text(rec["result"]);
  } else if (cmd == "constant") {
    os << heading("H") << "\n" << render_estimate_text(rec["H"]);
    os << heading("H + log^2(2pi)/(4pi)") << "\n" << render_estimate_text(rec["hassani"]);
    os << "reference H:        " << rec["reference_H"].get<std::string>() << "\n";
    os << "reference shifted:  " << rec["reference_hassani"].get<std::string>() << "\n";
  } else if (cmd == "table") {
    char line[160];
    std::snprintf(line, sizeof line, "%10s  %-16s  %-10s", "n", "H estimate", "E2 bound");
    os << line << "\n";
    for (const auto& row : rec["rows"]) {
      std::snprintf(line, sizeof line, "%10s  %-16s  %-10.3g", row["n_zeros"].get<std::string>().c_str(),
                    row["display"].get<std::string>().c_str(), std::stod(row["tail_bound"].get<std::string>()));
      os << line << "\n";
    }
  } else if (cmd == "verify") {
    if (rec.contains("warning")) os << "WARNING: " << rec["warning"].get<std::string>() << "\n";
    for (const auto& c : rec["checks"]) {
      os << c["status"].get<std::string>() << "  " << c["name"].get<std::string>() << "  "
         << c["detail"].get<std::string>() << "\n";
    }
    os << "overall: " << rec["overall"].get<std::string>() << "\n";
  } else if (cmd == "zeros") {
    os << "zeros:            " << rec["count"].get<std::string>() << "\n";
    os << "certified:        " << (rec["certified"].get<bool>() ? "yes" : "no") << "\n";
    if (rec.contains("certified_height")) {
      os << "certified height: " << rec["certified_height"].get<std::string>() << "\n";
    }
    os << "max radius:       " << rec["max_radius"].get<std::string>() << "\n";
    os << "file:             " << rec["file"].get<std::string>() << "\n";
    if (rec.contains("certification_error")) {
      os << "certification:    FAILED: " << rec["certification_error"].get<std::string>() << "\n";
    }
  }
  return os.str();
}

void emit(const Record& rec, const RunConfig& cfg, std::ostream& out) {
  const std::string text = cfg.format == Format::structured ? rec.dump(2) + "\n" : render_text(rec);
  if (!cfg.out_path.empty() && rec["command"] != "zeros") {
    std::ofstream f(cfg.out_path, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + cfg.out_path);
    f << text;
  } else {
    out << text;
  }
}

Record base_record(const std::string& cmd) {
  Record r;
  r["schema_version"] = kSchemaVersion;
  r["command"] = cmd;
  return r;
}

EstimateOptions estimate_options(const RunConfig& cfg) {
  EstimateOptions o;
  o.precision = cfg.precision_bits;
  o.allow_uncertified = cfg.allow_uncertified;
  o.fast = cfg.fast;
  o.workers = cfg.workers;
  return o;
}

Enclosure chosen_height(const RunConfig& cfg, const ZeroTable& t) {
  if (cfg.height) return Enclosure::exact(*cfg.height, cfg.precision_bits);
  const long n = cfg.count ? *cfg.count : static_cast<long>(t.size());
  return height_at_zero(t, n);
}

// ---- subcommands ----

Outcome cmd_zeros(const RunConfig& cfg, std::ostream& err) {
  if (cfg.out_path.empty()) throw CLI::ValidationError("--out", "zeros needs an output path");
  BuildResult res;
  if (!cfg.import_path.empty()) {
    res.table = load_zero_table(cfg.import_path);
    if (res.table.source.provenance.empty()) res.table.source.provenance = cfg.import_path;
    if (!res.table.is_certified()) res.certification_error = "imported table carries no Turing-window certificate";
  } else {
    if (!cfg.count && !cfg.height) throw CLI::ValidationError("zeros", "one of --count or --height is required");
    BuildOptions bo;
    bo.search.target_radius = cfg.target_radius;
    bo.search.workers = cfg.workers;
    bo.search.precision = cfg.precision_given ? cfg.precision_bits : 128;
    if (!cfg.quiet) bo.progress = [&err](const std::string& s) { err << s << "\n"; };
    if (cfg.count) {
      if (*cfg.count <= 0) throw DomainError("--count must be positive");
      res = build_zero_table_by_count(*cfg.count, bo);
    } else {
      res = build_zero_table_by_height(*cfg.height, bo);
    }
  }
  save_zero_table(res.table, cfg.out_path);
  Outcome o;
  o.record = base_record("zeros");
  o.record["count"] = std::to_string(res.table.size());
  o.record["certified"] = res.table.is_certified();
  o.record["method"] = res.table.certificate ? to_string(res.table.certificate->method) : "uncertified";
  if (res.table.certificate) o.record["certified_height"] = dec(res.table.certificate->height.upper());
  Real max_r(kRadiusPrecision);
  for (const auto& z : res.table.zeros) {
    if (z.gamma.radius() > max_r) max_r = z.gamma.radius();
  }
  o.record["max_radius"] = max_r.to_scientific(2, MPFR_RNDU);
  o.record["file"] = cfg.out_path;
  if (!res.certification_error.empty()) {
    o.record["certification_error"] = res.certification_error;
    o.code = kCertificationFailed;
  }
  return o;
}

Outcome cmd_estimate(const RunConfig& cfg, std::ostream& err) {
  const ZeroTable t = load_table(cfg);
  if (cfg.allow_uncertified) warn_if_uncertified(t, err);
  const Enclosure T = chosen_height(cfg, t);
  HEstimate e = estimate(estimate_method_from_string(cfg.method), t, T, estimate_options(cfg));
  if (cfg.shift == "hassani") e = hassani_shift(e);
  Outcome o;
  o.record = base_record("estimate");
  o.record["result"] = estimate_record(e);
  return o;
}

Outcome cmd_constant(const RunConfig& cfg, std::ostream& err) {
  const ZeroTable t = load_table(cfg);
  if (cfg.allow_uncertified) warn_if_uncertified(t, err);
  const Enclosure T = chosen_height(cfg, t);
  const HEstimate e = accelerated_estimate(t, T, estimate_options(cfg));
  Outcome o;
  o.record = base_record("constant");
  o.record["H"] = estimate_record(e);
  o.record["hassani"] = estimate_record(hassani_shift(e));
  o.record["reference_H"] = kReferenceH;
  o.record["reference_hassani"] = kReferenceHassani;
  return o;
}

std::vector<long> default_rows(std::size_t size) {
  std::vector<long> rows;
  for (long n = 10; static_cast<std::size_t>(n) <= size; n *= 10) rows.push_back(n);
  return rows;
}

Outcome cmd_table(const RunConfig& cfg, std::ostream& err) {
  if (cfg.rows_given && cfg.rows.empty()) throw CLI::ValidationError("--rows", "empty row list");
  const ZeroTable t = load_table(cfg);
  if (cfg.allow_uncertified) warn_if_uncertified(t, err);
  const std::vector<long> rows = cfg.rows_given ? cfg.rows : default_rows(t.size());
  if (rows.empty()) throw CLI::ValidationError("--rows", "table too small for the default rows");
  for (const long n : rows) {
    if (n <= 0 || static_cast<std::size_t>(n) > t.size()) {
      throw DomainError("row n = " + std::to_string(n) + " needs " + std::to_string(n) + " zeros; table has " +
                        std::to_string(t.size()));
    }
  }
  Outcome o;
  o.record = base_record("table");
  o.record["rows"] = Record::array();
  for (const long n : rows) {
    o.record["rows"].push_back(estimate_record(accelerated_estimate(t, height_at_zero(t, n), estimate_options(cfg))));
  }
  return o;
}

Record check(const std::string& name, const std::string& status, const std::string& detail) {
  return Record{{"name", name}, {"status", status}, {"detail", detail}};
}

std::string fmt(double x, int digits = 4) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

Outcome cmd_verify(const RunConfig& cfg, std::ostream& err) {
  const ZeroTable t = load_table(cfg);
  Outcome o;
  o.record = base_record("verify");
  Record checks = Record::array();
  EstimateOptions eo = estimate_options(cfg);
  eo.fast = false;
  if (!t.is_certified()) {
    eo.allow_uncertified = true;
    o.record["warning"] = "table is not certified; results below are not rigorous";
    err << "WARNING: table is not certified; results below are not rigorous\n";
  }

  // certificate
  if (!t.certificate) {
    checks.push_back(check("certificate", "fail", "table carries no certificate"));
  } else if (t.certificate->method == CertificateMethod::external_trusted) {
    checks.push_back(check("certificate", "skipped", "external_trusted table"));
  } else {
    const std::string msg = check_certificate(*t.certificate, t);
    checks.push_back(check("certificate", msg.empty() ? "pass" : "fail",
                           msg.empty() ? "window inequality holds at T = " + dec(t.certificate->height.upper())
                                       : msg));
  }

  if (t.zeros.empty()) {
    checks.push_back(check("zeros", "fail", "table is empty"));
  } else {
    // Buthe inequality
    const double top = t.certified_height() ? t.certified_height()->lower_double()
                                            : t.zeros.back().gamma.upper_double();
    const double start = (enc_const(EncConst::two_pi_e, 64) * 2).upper_double();
    std::vector<double> hs{start};
    if (top >= 5000) hs.push_back(5000);
    const double lo = std::max(50.0, start);
    if (top > lo) {
      for (int i = 0; i < 100; ++i) hs.push_back(lo * std::pow(top / lo, i / 99.0) * (i == 99 ? 1 - 1e-12 : 1.0));
    }
    hs.erase(std::remove_if(hs.begin(), hs.end(), [&](double h) { return h > top; }), hs.end());
    const auto samples = buthe_check(t, hs, eo);
    const long passed = std::count_if(samples.begin(), samples.end(),
                                      [](const ButheSample& s) { return s.status == CheckStatus::pass; });
    std::string detail = std::to_string(passed) + "/" + std::to_string(samples.size()) + " heights in [" +
                         fmt(hs.front()) + ", " + fmt(hs.back()) + "]";
    for (const auto& s : samples) {
      if (s.status != CheckStatus::pass) {
        detail += "; " + to_string(s.status) + " at T = " + fmt(s.T, 10);
        break;
      }
    }
    checks.push_back(check("buthe_inequality", passed == static_cast<long>(samples.size()) ? "pass" : "fail", detail));

    // reference-value envelope and decay fits
    const Enclosure href = Enclosure::from_decimal(kReferenceH, cfg.precision_bits);
    std::vector<double> lx, la, ln;
    bool envelope_ok = true;
    std::string env_detail;
    for (long n = 10; static_cast<std::size_t>(n) <= t.size(); n *= 10) {
      const Enclosure T = height_at_zero(t, n);
      const HEstimate acc = accelerated_estimate(t, T, eo);
      const bool inside = acc.total.contains(href);
      envelope_ok = envelope_ok && inside;
      env_detail += (env_detail.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) +
                    (inside ? " ok" : " OUTSIDE");
      if (n >= 100) {
        const HEstimate nav = naive_estimate(t, T, eo);
        lx.push_back(std::log10(T.to_double()));
        la.push_back(std::log10(std::abs((acc.value - href).to_double())));
        ln.push_back(std::log10(std::abs((nav.value - href).to_double())));
      }
    }
    checks.push_back(check("reference_envelope", envelope_ok ? "pass" : "fail", env_detail));
    if (lx.size() >= 2) {
      const double sa = least_squares_slope(lx, la);
      const double sn = least_squares_slope(lx, ln);
      checks.push_back(check("decay_accelerated", sa <= -1.8 ? "pass" : "fail",
                             "slope " + fmt(sa) + " over " + std::to_string(lx.size()) + " rows (need <= -1.8)"));
      checks.push_back(check("decay_naive", sn >= -1.3 && sn <= -0.7 ? "pass" : "fail",
                             "slope " + fmt(sn) + " (need within [-1.3, -0.7])"));
    } else {
      checks.push_back(check("decay_accelerated", "skipped", "needs at least 1000 zeros"));
      checks.push_back(check("decay_naive", "skipped", "needs at least 1000 zeros"));
    }
  }
  bool all = true;
  for (const auto& c : checks) all = all && c["status"] != "fail";
  o.record["checks"] = checks;
  o.record["overall"] = all ? "pass" : "fail";
  o.code = all ? kSuccess : kVerificationFailed;
  return o;
}

std::vector<long> parse_rows(const std::string& csv) {
  std::vector<long> rows;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--rows", "bad row '" + item + "'");
    }
    if (used != item.size()) throw CLI::ValidationError("--rows", "bad row '" + item + "'");
    rows.push_back(v);
  }
  return rows;
}

}  // namespace

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Certified zeta zero ordinates and the constant H"};
  app.require_subcommand(1, 1);
  std::string format = "text";
  std::string rows_csv;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--precision-bits", cfg.precision_bits, "working precision in bits")
        ->check(CLI::Range(static_cast<mpfr_prec_t>(kMinPrecision), static_cast<mpfr_prec_t>(1 << 20)));
    sub->add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--out", cfg.out_path, "output path");
  };
  auto add_table_input = [&](CLI::App* sub) {
    sub->add_option("--zeros", cfg.zeros_path, "zero table file")->required();
    sub->add_flag("--allow-uncertified", cfg.allow_uncertified, "accept uncertified tables");
  };

  auto* zeros = app.add_subcommand("zeros", "compute, certify and save a zero table");
  auto* zc = zeros->add_option("--count", cfg.count, "number of zeros");
  auto* zh = zeros->add_option("--height", cfg.height, "height T");
  zc->excludes(zh);
  zeros->add_option("--workers", cfg.workers, "worker threads (0 = all cores)");
  zeros->add_option("--target-radius", cfg.target_radius, "ordinate radius target")->check(CLI::PositiveNumber);
  zeros->add_option("--import", cfg.import_path, "ingest an external zero list instead of computing");
  zeros->add_flag("--quiet", cfg.quiet, "no progress messages");
  add_common(zeros);

  auto* est = app.add_subcommand("estimate", "estimate H from a zero table");
  add_table_input(est);
  auto* ec = est->add_option("--count", cfg.count, "use T = gamma_n");
  auto* eh = est->add_option("--height", cfg.height, "use this height T");
  ec->excludes(eh);
  est->add_option("--method", cfg.method, "naive or accelerated")->check(CLI::IsMember({"naive", "accelerated"}));
  est->add_option("--shift", cfg.shift, "hassani")->check(CLI::IsMember({"hassani"}));
  est->add_flag("--fast", cfg.fast, "floating-point sums without enclosures");
  est->add_option("--workers", cfg.workers, "worker threads for --fast");
  add_common(est);

  auto* tab = app.add_subcommand("table", "accelerated estimates at T = gamma_n for several n");
  add_table_input(tab);
  tab->add_option("--rows", rows_csv, "comma-separated list of n");
  add_common(tab);

  auto* ver = app.add_subcommand("verify", "run the invariant checks on a zero table");
  ver->add_option("--zeros", cfg.zeros_path, "zero table file")->required();
  add_common(ver);

  auto* con = app.add_subcommand("constant", "H and its shifted form from the whole table");
  add_table_input(con);
  auto* cc = con->add_option("--count", cfg.count, "use T = gamma_n");
  auto* ch = con->add_option("--height", cfg.height, "use this height T");
  cc->excludes(ch);
  add_common(con);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.format = format == "structured" ? Format::structured : Format::text;
  auto* active = app.get_subcommands().front();
  cfg.precision_given = active->count("--precision-bits") > 0;

  try {
    if (cfg.subcommand == "table") {
      cfg.rows_given = tab->count("--rows") > 0;
      cfg.rows = parse_rows(rows_csv);
    }
    Outcome o;
    if (cfg.subcommand == "zeros") o = cmd_zeros(cfg, err);
    else if (cfg.subcommand == "estimate") o = cmd_estimate(cfg, err);
    else if (cfg.subcommand == "table") o = cmd_table(cfg, err);
    else if (cfg.subcommand == "verify") o = cmd_verify(cfg, err);
    else o = cmd_constant(cfg, err);
    emit(o.record, cfg, out);
    if (o.code == kVerificationFailed) err << "verification failed\n";
    return o.code;
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const UncertifiedTableError& e) {
    err << "uncertified: " << e.what() << "\n";
    return kCertificationFailed;
  } catch (const CertificationError& e) {
    err << "certification failed: " << e.what() << "\n";
    return kCertificationFailed;
  } catch (const ParseError& e) {
    err << "error reading zero table: " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace hzeta::cli

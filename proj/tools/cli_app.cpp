#include "cli_app.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

namespace nhosc_cli {

const char* command_name(Command c) noexcept {
  switch (c) {
    case Command::CommutatorCheck: return "commutator-check";
    case Command::Spectrum: return "spectrum";
    case Command::TableOne: return "table1";
    case Command::TableTwo: return "table2";
    case Command::SweepW: return "sweep-w";
    case Command::SweepN: return "sweep-n";
    case Command::Duality: return "duality";
  }
  return "?";
}

namespace {

struct RawOptions {
  std::size_t n_dim = 100;
  double scale = 1.0;
  std::string freq;
  double l_coef = 0.0, r_coef = 0.0, a_coef = 1.0, b_coef = 1.0, capital_w = 0.0;
  std::size_t count = 50;
  std::string format = "text";
  std::string out;
  std::string values;
  std::string sort = "re";
  double tol = 1e-3;
};

struct SubcommandOptions {
  CLI::App* app;
  std::map<std::string, CLI::Option*> opts;
  bool given(const std::string& name) const {
    auto it = opts.find(name);
    return it != opts.end() && it->second->count() > 0;
  }
};

double parse_number(const std::string& text, const char* flag) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
    throw ConfigError(std::string("invalid number for ") + flag + ": '" + text + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(parse_number(item, flag));
  }
  if (out.empty()) throw ConfigError(std::string(flag) + " requires a comma-separated list");
  return out;
}

void forbid(const SubcommandOptions& sub, std::initializer_list<const char*> names,
            const std::string& why) {
  for (const char* n : names) {
    if (sub.given(n)) {
      throw ConfigError(std::string("contradictory parameters: ") + n + " cannot be combined with " +
                        why);
    }
  }
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& tokens) {
  CLI::App app{"Spectra of the non-Hermitian transformed oscillator in a truncated Fock basis",
               "nhosc"};
  app.require_subcommand(1);
  RawOptions raw;

  const std::vector<std::pair<Command, const char*>> commands = {
      {Command::CommutatorCheck, "check [z, y] / (i (1 + L R)) against the identity"},
      {Command::Spectrum, "diagonalize H for explicit parameters"},
      {Command::TableOne, "A=1, R=0, B=sqrt(W^2+L^2), w=W"},
      {Command::TableTwo, "B=1, L=0, A=sqrt(W^2+R^2), w=1/W"},
      {Command::SweepW, "sweep the basis frequency (--values w1,w2,...)"},
      {Command::SweepN, "sweep the truncation size (--values N1,N2,...)"},
      {Command::Duality, "compare the spectra of (L,R,A,B,w) and (R,L,B,A,1/w)"},
  };
  std::vector<std::pair<Command, SubcommandOptions>> subs;
  for (const auto& [cmd, desc] : commands) {
    SubcommandOptions s{app.add_subcommand(command_name(cmd), desc), {}};
    auto add = [&](const char* name, auto& target, const char* help) {
      s.opts[name] = s.app->add_option(name, target, help);
    };
    add("--N", raw.n_dim, "basis dimension");
    add("--s", raw.scale, "length scale");
    add("--w", raw.freq, "basis frequency, or 'auto' for w_v");
    add("--L", raw.l_coef, "L in p -> p + iLx");
    add("--R", raw.r_coef, "R in x -> x + iRp");
    add("--A", raw.a_coef, "coefficient A");
    add("--B", raw.b_coef, "coefficient B");
    add("--W", raw.capital_w, "table shorthand W");
    add("--count", raw.count, "number of rows to print or export");
    add("--format", raw.format, "text, csv or json");
    add("--out", raw.out, "write the result to PATH");
    add("--tol", raw.tol, "absolute tolerance for iso-spectra remarks");
    add("--sort", raw.sort, "re (real then imaginary) or modulus (modulus then phase)");
    if (cmd == Command::SweepW || cmd == Command::SweepN) {
      add("--values", raw.values, "comma-separated sweep values");
    }
    subs.emplace_back(cmd, std::move(s));
  }

  std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
  app.parse(reversed);

  const auto selected = std::ranges::find_if(subs, [](const auto& s) { return s.second.app->parsed(); });
  if (selected == subs.end()) throw ConfigError("no subcommand given");
  const Command cmd = selected->first;
  const SubcommandOptions& sub = selected->second;

  RunConfig cfg;
  cfg.command = cmd;
  cfg.n_dim = raw.n_dim;
  cfg.scale = raw.scale;
  cfg.report_tol = raw.tol;
  cfg.l_coef = raw.l_coef;
  cfg.r_coef = raw.r_coef;
  cfg.a_coef = raw.a_coef;
  cfg.b_coef = raw.b_coef;

  if (raw.format == "text") {
    cfg.format = Format::Text;
  } else if (raw.format == "csv") {
    cfg.format = Format::Csv;
  } else if (raw.format == "json") {
    cfg.format = Format::Json;
  } else {
    throw ConfigError("unknown --format '" + raw.format + "' (expected text, csv or json)");
  }
  if (raw.sort == "re") {
    cfg.sort_order = NHOSC_SORT_RE_THEN_IM;
  } else if (raw.sort == "modulus") {
    cfg.sort_order = NHOSC_SORT_MODULUS_THEN_PHASE;
  } else {
    throw ConfigError("unknown --sort '" + raw.sort + "' (expected re or modulus)");
  }
  if (sub.given("--out")) cfg.output_path = raw.out;

  if (cfg.n_dim < 2) throw ConfigError("--N must be at least 2");
  if (!(cfg.scale > 0.0)) throw ConfigError("--s must be positive");
  if (!(cfg.report_tol >= 0.0)) throw ConfigError("--tol must be non-negative");

  // Table shorthands.
  std::optional<double> default_freq;
  const bool table_two_style =
      cmd == Command::TableTwo ||
      (cmd != Command::TableOne && sub.given("--W") && sub.given("--R") && !sub.given("--L"));
  if (cmd == Command::TableOne || cmd == Command::TableTwo || sub.given("--W")) {
    const double w_cap = sub.given("--W") ? raw.capital_w : 4.0;
    if (!(w_cap > 0.0)) throw ConfigError("--W must be positive");
    cfg.capital_w = w_cap;
    if (table_two_style) {
      forbid(sub, {"--A", "--B", "--L"}, "the table2 shorthand (B=1, L=0, A=sqrt(W^2+R^2))");
      cfg.r_coef = sub.given("--R") ? raw.r_coef : (cmd == Command::TableTwo ? 3.0 : 0.0);
      cfg.l_coef = 0.0;
      cfg.b_coef = 1.0;
      cfg.a_coef = std::sqrt(w_cap * w_cap + cfg.r_coef * cfg.r_coef);
      default_freq = 1.0 / w_cap;
    } else {
      forbid(sub, {"--A", "--B", "--R"}, "the table1 shorthand (A=1, R=0, B=sqrt(W^2+L^2))");
      cfg.l_coef = sub.given("--L") ? raw.l_coef : (cmd == Command::TableOne ? 3.0 : 0.0);
      cfg.r_coef = 0.0;
      cfg.a_coef = 1.0;
      cfg.b_coef = std::sqrt(w_cap * w_cap + cfg.l_coef * cfg.l_coef);
      default_freq = w_cap;
    }
  }

  if (1.0 + cfg.l_coef * cfg.r_coef == 0.0) {
    throw ConfigError("1 + L*R must not vanish");
  }

  // Basis frequency.
  std::string freq_text = raw.freq;
  if (!sub.given("--w")) freq_text = cmd == Command::CommutatorCheck ? "1" : "auto";
  if (freq_text == "auto") {
    nhosc_variational v{};
    const nhosc_params p = cfg.params();
    if (nhosc_variational_frequency(&p, &v) != NHOSC_OK) throw ConfigError(nhosc_last_error());
    if (!v.defined) {
      throw ConfigError("--w auto: variational frequency is undefined for these parameters "
                        "((B^2 - L^2 A^2) / (A^2 - R^2 B^2) is not positive)");
    }
    cfg.freq = v.w_v;
    cfg.freq_auto = true;
    // The table shorthands fix w exactly (W or 1/W), which agrees with w_v.
    if (default_freq && !sub.given("--w")) cfg.freq = *default_freq;
  } else {
    cfg.freq = parse_number(freq_text, "--w");
    if (!(cfg.freq > 0.0)) throw ConfigError("--w must be positive");
  }

  if (sub.given("--count")) {
    if (raw.count < 1 || raw.count > cfg.n_dim) {
      throw ConfigError("--count must lie in [1, N]");
    }
    cfg.print_count = raw.count;
  } else {
    cfg.print_count = std::min<std::size_t>(50, cfg.n_dim);
  }

  if (cmd == Command::SweepW || cmd == Command::SweepN) {
    if (!sub.given("--values")) throw ConfigError(std::string(command_name(cmd)) + " requires --values");
    cfg.sweep_values = parse_list(raw.values, "--values");
    for (double v : cfg.sweep_values) {
      if (cmd == Command::SweepW && !(v > 0.0)) throw ConfigError("sweep frequencies must be positive");
      if (cmd == Command::SweepN && (v < 2.0 || v != std::floor(v))) {
        throw ConfigError("sweep truncation sizes must be integers >= 2");
      }
    }
  }
  return cfg;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

std::string format_complex(double re, double im) {
  if (std::abs(im) < 0.005) return format_real(re);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.2f%c%.2fi", re, im < 0 ? '-' : '+', std::abs(im));
  return buf;
}

namespace {

struct StringDeleter {
  void operator()(char* s) const { nhosc_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;
struct ReportDeleter {
  void operator()(nhosc_report* r) const { nhosc_report_free(r); }
};
struct SpectrumDeleter {
  void operator()(nhosc_spectrum* s) const { nhosc_spectrum_free(s); }
};
struct SweepDeleter {
  void operator()(nhosc_sweep* s) const { nhosc_sweep_free(s); }
};

// Carries a failing C status out of the pipeline with the stage that failed.
struct StageFailure {
  nhosc_status status;
  std::string message;
};

void check(nhosc_status st, const char* stage) {
  if (st != NHOSC_OK) throw StageFailure{st, std::string(stage) + ": " + nhosc_last_error()};
}

nhosc_format c_format(Format f) { return f == Format::Csv ? NHOSC_FORMAT_CSV : NHOSC_FORMAT_JSON; }

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output_path) {
    check(nhosc_write_file(cfg.output_path->c_str(), text.c_str()), "export");
  } else {
    out << text;
  }
}

std::string describe_params(const RunConfig& cfg) {
  std::ostringstream os;
  os << "N = " << cfg.n_dim << ", s = " << format_real(cfg.scale) << ", L = " << format_real(cfg.l_coef)
     << ", R = " << format_real(cfg.r_coef) << ", A = " << format_real(cfg.a_coef)
     << ", B = " << format_real(cfg.b_coef) << ", w = " << format_real(cfg.freq)
     << (cfg.freq_auto ? " (w_v)" : "");
  return os.str();
}

std::string render_report_text(const RunConfig& cfg, const nhosc_report* rep) {
  std::ostringstream os;
  const bool table_one = cfg.command == Command::TableOne;
  const bool table_two = cfg.command == Command::TableTwo;
  if (table_one) {
    os << "Instability in iso-spectra of H with A=1, R=0 and B=sqrt(W^2+L^2)\n";
  } else if (table_two) {
    os << "Instability in iso-spectra of H with B=1, L=0 and A=sqrt(W^2+R^2)\n";
  }
  os << describe_params(cfg) << "\n";
  if (table_one || table_two) {
    os << "W | " << (table_one ? "L" : "R") << " | " << (table_one ? "w=W" : "w=1/W")
       << " | E_n -> H | eps_n | Remarks\n";
  } else {
    os << "n | E_n -> H | eps_n | |E_n - eps_n| | Remarks\n";
  }
  for (std::size_t k = 0; k < cfg.print_count; ++k) {
    nhosc_report_row row{};
    check(nhosc_report_row_at(rep, k, &row), "report");
    const std::string computed = format_complex(row.re, row.im);
    const char* remark = row.iso ? "iso-spectra" : "No iso-spectra";
    if (table_one || table_two) {
      os << format_real(*cfg.capital_w) << " | "
         << format_real(table_one ? cfg.l_coef : cfg.r_coef) << " | " << format_real(cfg.freq)
         << " | " << computed << " | " << format_real(row.epsilon) << " | " << remark << "\n";
    } else {
      char dev[32];
      std::snprintf(dev, sizeof dev, "%.3g", row.abs_dev);
      os << row.level << " | " << computed << " | " << format_real(row.epsilon) << " | " << dev
         << " | " << remark << "\n";
    }
  }
  nhosc_report_summary sum{};
  check(nhosc_report_get_summary(rep, &sum), "report");
  os << "real eigenvalues: " << sum.n_real << ", complex-conjugate pairs: " << sum.n_complex_pairs;
  if (sum.has_first_deviation) {
    os << ", first deviation at level " << sum.first_deviation_index;
  } else {
    os << ", no deviation within tolerance";
  }
  os << "\n";
  return os.str();
}

std::string run_report(const RunConfig& cfg) {
  const nhosc_basis b = cfg.basis();
  const nhosc_params p = cfg.params();
  nhosc_report* raw = nullptr;
  check(nhosc_report_compute(&b, &p, cfg.report_tol, cfg.sort_order, &raw), "spectrum");
  std::unique_ptr<nhosc_report, ReportDeleter> rep(raw);
  if (cfg.format == Format::Text) return render_report_text(cfg, rep.get());
  char* text = nullptr;
  check(nhosc_report_serialize(rep.get(), c_format(cfg.format), cfg.print_count,
                               command_name(cfg.command), &text),
        "export");
  return OwnedString(text).get();
}

std::string run_broken_spectrum(const RunConfig& cfg) {
  const nhosc_basis b = cfg.basis();
  const nhosc_params p = cfg.params();
  nhosc_spectrum* raw = nullptr;
  check(nhosc_spectrum_compute(&b, &p, &raw), "spectrum");
  std::unique_ptr<nhosc_spectrum, SpectrumDeleter> spec(raw);
  check(nhosc_spectrum_sort(spec.get(), cfg.sort_order), "sort");
  if (cfg.format != Format::Text) {
    char* text = nullptr;
    check(nhosc_spectrum_serialize(spec.get(), c_format(cfg.format), cfg.print_count,
                                   command_name(cfg.command), &text),
          "export");
    return OwnedString(text).get();
  }
  nhosc_classification cls{};
  check(nhosc_spectrum_classify(spec.get(), -1.0, -1.0, &cls), "classify");
  std::ostringstream os;
  os << describe_params(cfg) << "\n";
  os << "regime: broken (no analytic reference spectrum)\n";
  os << "n | E_n -> H\n";
  for (std::size_t k = 0; k < cfg.print_count; ++k) {
    double re = 0, im = 0;
    check(nhosc_spectrum_value(spec.get(), k, &re, &im), "spectrum");
    os << k << " | " << format_complex(re, im) << "\n";
  }
  os << "real eigenvalues: " << cls.n_real << ", complex-conjugate pairs: " << cls.n_complex_pairs
     << "\n";
  return os.str();
}

std::string run_spectrum(const RunConfig& cfg) {
  const nhosc_params p = cfg.params();
  nhosc_regime regime{};
  check(nhosc_classify_regime(&p, &regime), "regime");
  return regime.real_spectrum ? run_report(cfg) : run_broken_spectrum(cfg);
}

std::string run_commutator(const RunConfig& cfg) {
  const nhosc_basis b = cfg.basis();
  const nhosc_params p = cfg.params();
  if (cfg.format != Format::Text) {
    char* text = nullptr;
    check(nhosc_commutator_serialize(&b, &p, c_format(cfg.format), command_name(cfg.command), &text),
          "commutator");
    return OwnedString(text).get();
  }
  nhosc_commutator_defect d{};
  check(nhosc_commutator_check(&b, &p, &d), "commutator");
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "[x+iRp, p+iLx] / (i (1+LR)) with N = %zu, L = %s, R = %s, w = %s, s = %s\n"
                "max |diag - 1| over the first %zu entries: %.3e\n"
                "last diagonal entry (truncation defect): %s\n"
                "max |off-diagonal|: %.3e\n"
                "invariant on the first N-1 levels: %s\n",
                d.n_dim, format_real(cfg.l_coef).c_str(), format_real(cfg.r_coef).c_str(),
                format_real(cfg.freq).c_str(), format_real(cfg.scale).c_str(), d.n_dim - 1,
                d.max_diag_deviation, format_complex(d.last_diag_re, d.last_diag_im).c_str(),
                d.max_offdiag,
                (d.max_diag_deviation <= 1e-12 && d.max_offdiag <= 1e-12) ? "yes" : "no");
  return buf;
}

std::string run_duality(const RunConfig& cfg) {
  const nhosc_basis b = cfg.basis();
  const nhosc_params p = cfg.params();
  if (cfg.format != Format::Text) {
    char* text = nullptr;
    check(nhosc_duality_serialize(&b, &p, c_format(cfg.format), command_name(cfg.command), &text),
          "duality");
    return OwnedString(text).get();
  }
  nhosc_duality d{};
  check(nhosc_duality_check(&b, &p, &d), "duality");
  std::ostringstream os;
  os << describe_params(cfg) << "\n";
  os << "dual: L = " << format_real(cfg.r_coef) << ", R = " << format_real(cfg.l_coef)
     << ", A = " << format_real(cfg.b_coef) << ", B = " << format_real(cfg.a_coef)
     << ", w = " << format_real(1.0 / cfg.freq) << "\n";
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "multiset distance: %.3e (||H||_F = %.6g, relative %.3e)\n"
                "isospectral within 1e-6 ||H||: %s\n",
                d.distance, d.matrix_norm, d.matrix_norm > 0 ? d.distance / d.matrix_norm : 0.0,
                d.distance <= 1e-6 * d.matrix_norm ? "yes" : "no");
  os << buf;
  return os.str();
}

std::string run_sweep(const RunConfig& cfg) {
  const nhosc_params p = cfg.params();
  nhosc_sweep* raw = nullptr;
  if (cfg.command == Command::SweepW) {
    check(nhosc_sweep_frequency(&p, cfg.n_dim, cfg.scale, cfg.sweep_values.data(),
                                cfg.sweep_values.size(), cfg.report_tol, &raw),
          "sweep");
  } else {
    std::vector<std::size_t> ns;
    for (double v : cfg.sweep_values) ns.push_back(static_cast<std::size_t>(v));
    check(nhosc_sweep_truncation(&p, cfg.freq, cfg.scale, ns.data(), ns.size(), cfg.report_tol, &raw),
          "sweep");
  }
  std::unique_ptr<nhosc_sweep, SweepDeleter> sweep(raw);
  if (cfg.format != Format::Text) {
    char* text = nullptr;
    check(nhosc_sweep_serialize(sweep.get(), c_format(cfg.format), command_name(cfg.command), &text),
          "export");
    return OwnedString(text).get();
  }
  std::ostringstream os;
  os << "L = " << format_real(cfg.l_coef) << ", R = " << format_real(cfg.r_coef)
     << ", A = " << format_real(cfg.a_coef) << ", B = " << format_real(cfg.b_coef);
  if (cfg.command == Command::SweepW) {
    os << ", N = " << cfg.n_dim << "\nw | n_real | pairs | first deviation | max dev below\n";
  } else {
    os << ", w = " << format_real(cfg.freq) << "\nN | n_real | pairs | first deviation | max dev below\n";
  }
  for (std::size_t k = 0; k < nhosc_sweep_size(sweep.get()); ++k) {
    nhosc_sweep_point pt{};
    check(nhosc_sweep_point_at(sweep.get(), k, &pt), "sweep");
    char axis[32];
    std::snprintf(axis, sizeof axis, "%g", pt.axis_value);
    os << axis << " | ";
    if (pt.failed) {
      os << "failed: " << nhosc_sweep_point_error(sweep.get(), k) << "\n";
      continue;
    }
    char dev[32];
    std::snprintf(dev, sizeof dev, "%.3g", pt.max_abs_dev_below_first_deviation);
    os << pt.n_real << " | " << pt.n_complex_pairs << " | "
       << (pt.has_first_deviation ? std::to_string(pt.first_deviation_index) : std::string("none"))
       << " | " << dev << "\n";
  }
  return os.str();
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    std::string text;
    switch (cfg.command) {
      case Command::CommutatorCheck: text = run_commutator(cfg); break;
      case Command::Spectrum: text = run_spectrum(cfg); break;
      case Command::TableOne:
      case Command::TableTwo: text = run_report(cfg); break;
      case Command::SweepW:
      case Command::SweepN: text = run_sweep(cfg); break;
      case Command::Duality: text = run_duality(cfg); break;
    }
    emit(cfg, text, out);
    return 0;
  } catch (const StageFailure& f) {
    err << "nhosc: " << f.message << "\n";
    return static_cast<int>(f.status);
  }
}

int main_entry(const std::vector<std::string>& tokens, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_config(tokens);
  } catch (const CLI::CallForHelp&) {
    out << "usage: nhosc {commutator-check|spectrum|table1|table2|sweep-w|sweep-n|duality} "
           "[--N n] [--s s] [--w w|auto] [--L l] [--R r] [--A a] [--B b] [--W W]\n"
           "             [--count k] [--format text|csv|json] [--out PATH] [--tol t] "
           "[--sort re|modulus] [--values v1,v2,...]\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "nhosc: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "nhosc: " << e.what() << "\n";
    return 2;
  }
  return run(cfg, out, err);
}

}  // namespace nhosc_cli

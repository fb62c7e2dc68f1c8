#include "nhosc/serialization.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <optional>
#include <system_error>

namespace nhosc {

std::string format_double(double v) {
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::InvalidArgument, "cannot serialize a non-finite number");
  }
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

namespace {

// Minimal streaming JSON emitter for the fixed export schemas. Keys are
// written in call order.
class JsonWriter {
 public:
  void begin_object() { open('{'); }
  void end_object() { close('}'); }
  void begin_array() { open('['); }
  void end_array() { close(']'); }

  void key(std::string_view k) {
    separator();
    string_literal(k);
    out_ += ':';
    after_key_ = true;
  }
  void value(double v) { scalar(format_double(v)); }
  void value(std::size_t v) { scalar(std::to_string(v)); }
  void value(bool v) { scalar(v ? "true" : "false"); }
  void value(std::string_view v) {
    separator();
    string_literal(v);
  }
  void value(const char* v) { value(std::string_view(v)); }
  void null() { scalar("null"); }
  template <typename T>
  void optional(const std::optional<T>& v) {
    if (v) {
      value(*v);
    } else {
      null();
    }
  }
  template <typename T>
  void field(std::string_view k, const T& v) {
    key(k);
    value(v);
  }

  std::string finish() {
    out_ += '\n';
    return std::move(out_);
  }

 private:
  void separator() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    if (!first_.empty()) {
      if (!first_.back()) out_ += ',';
      first_.back() = false;
    }
  }
  void open(char c) {
    separator();
    out_ += c;
    first_.push_back(true);
  }
  void close(char c) {
    first_.pop_back();
    out_ += c;
  }
  void scalar(const std::string& text) {
    separator();
    out_ += text;
  }
  void string_literal(std::string_view s) {
    out_ += '"';
    for (const char ch : s) {
      switch (ch) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        case '\r': out_ += "\\r"; break;
        default:
          if (static_cast<unsigned char>(ch) < 0x20) {
            std::array<char, 8> esc{};
            std::snprintf(esc.data(), esc.size(), "\\u%04x", static_cast<unsigned>(ch));
            out_ += esc.data();
          } else {
            out_ += ch;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> first_;
  bool after_key_ = false;
};

void write_params(JsonWriter& j, const TransformParams& p) {
  j.field("l_coef", p.l_coef);
  j.field("r_coef", p.r_coef);
  j.field("a_coef", p.a_coef);
  j.field("b_coef", p.b_coef);
}

void write_basis(JsonWriter& j, const BasisSpec& b) {
  j.field("n_dim", b.n_dim);
  j.field("freq", b.freq);
  j.field("scale", b.scale);
}

const char* remark_label(Remark r) { return r == Remark::Iso ? "iso" : "no_iso"; }

std::string csv_line(std::initializer_list<std::string> cells) {
  std::string line;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) line += ',';
    line += c;
    first = false;
  }
  line += '\n';
  return line;
}

std::string optional_index(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : std::string();
}

}  // namespace

std::string serialize_report(const IsospectralReport& report, ExportFormat format,
                             std::size_t row_count, std::string_view command) {
  const std::size_t rows = std::min(row_count, report.rows.size());
  if (format == ExportFormat::Csv) {
    std::string out = "level,epsilon_n,re,im,abs_dev,remark\n";
    for (std::size_t k = 0; k < rows; ++k) {
      const ReportRow& r = report.rows[k];
      out += csv_line({std::to_string(r.level), format_double(r.epsilon),
                       format_double(r.computed.real()), format_double(r.computed.imag()),
                       format_double(r.abs_dev), remark_label(r.remark)});
    }
    return out;
  }

  const ReportConfig& cfg = report.config_echo;
  JsonWriter j;
  j.begin_object();
  j.field("command", command);
  j.key("config");
  j.begin_object();
  write_basis(j, cfg.basis);
  write_params(j, cfg.params);
  j.field("report_tol", cfg.report_tol);
  j.field("sort_order", to_string(cfg.sort_order));
  j.key("variational_frequency");
  j.optional(cfg.variational_freq);
  j.end_object();
  j.key("rows");
  j.begin_array();
  for (std::size_t k = 0; k < rows; ++k) {
    const ReportRow& r = report.rows[k];
    j.begin_object();
    j.field("level", r.level);
    j.field("epsilon_n", r.epsilon);
    j.field("re", r.computed.real());
    j.field("im", r.computed.imag());
    j.field("abs_dev", r.abs_dev);
    j.field("remark", remark_label(r.remark));
    j.end_object();
  }
  j.end_array();
  j.key("summary");
  j.begin_object();
  j.field("n_dim", report.rows.size());
  j.field("n_real", report.n_real);
  j.field("n_complex_pairs", report.n_complex_pairs);
  j.key("first_deviation_index");
  j.optional(report.first_deviation_index);
  j.field("matrix_norm", report.matrix_norm);
  j.field("rows_written", rows);
  j.end_object();
  j.end_object();
  return j.finish();
}

std::string serialize_spectrum(const Spectrum& spectrum, const ClassifiedSpectrum& classes,
                               const TransformParams& params, const BasisSpec& basis,
                               ExportFormat format, std::size_t row_count,
                               std::string_view command) {
  const std::size_t rows = std::min(row_count, spectrum.values.size());
  if (format == ExportFormat::Csv) {
    std::string out = "index,re,im\n";
    for (std::size_t k = 0; k < rows; ++k) {
      out += csv_line({std::to_string(k), format_double(spectrum.values[k].real()),
                       format_double(spectrum.values[k].imag())});
    }
    return out;
  }
  const RegimeReport regime = classify_regime(params);
  JsonWriter j;
  j.begin_object();
  j.field("command", command);
  j.key("config");
  j.begin_object();
  write_basis(j, basis);
  write_params(j, params);
  j.field("sort_order", to_string(spectrum.sort_order));
  j.key("variational_frequency");
  j.optional(variational_frequency(params).w_v);
  j.field("regime", to_string(regime.regime));
  j.end_object();
  j.key("rows");
  j.begin_array();
  for (std::size_t k = 0; k < rows; ++k) {
    j.begin_object();
    j.field("index", k);
    j.field("re", spectrum.values[k].real());
    j.field("im", spectrum.values[k].imag());
    j.end_object();
  }
  j.end_array();
  j.key("summary");
  j.begin_object();
  j.field("n_dim", spectrum.values.size());
  j.field("n_real", classes.n_real);
  j.field("n_complex_pairs", classes.n_complex);
  j.field("matrix_norm", spectrum.matrix_norm);
  j.field("rows_written", rows);
  j.end_object();
  j.end_object();
  return j.finish();
}

std::string serialize_sweep(const SweepResult& sweep, ExportFormat format,
                            std::string_view command) {
  if (format == ExportFormat::Csv) {
    std::string out =
        "axis_value,n_dim,n_real,n_complex_pairs,first_deviation_index,"
        "max_abs_dev_below_first_deviation,error\n";
    for (const SweepPoint& p : sweep.points) {
      out += csv_line({format_double(p.axis_value), std::to_string(p.n_dim),
                       std::to_string(p.n_real), std::to_string(p.n_complex_pairs),
                       optional_index(p.first_deviation_index),
                       format_double(p.max_abs_dev_below_first_deviation),
                       p.error ? "failed" : ""});
    }
    return out;
  }
  JsonWriter j;
  j.begin_object();
  j.field("command", command);
  j.key("config");
  j.begin_object();
  j.field("axis", to_string(sweep.axis));
  write_params(j, sweep.params);
  j.field("report_tol", sweep.report_tol);
  j.end_object();
  j.key("points");
  j.begin_array();
  for (const SweepPoint& p : sweep.points) {
    j.begin_object();
    j.field("axis_value", p.axis_value);
    j.field("n_dim", p.n_dim);
    j.field("n_real", p.n_real);
    j.field("n_complex_pairs", p.n_complex_pairs);
    j.key("first_deviation_index");
    j.optional(p.first_deviation_index);
    j.field("max_abs_dev_below_first_deviation", p.max_abs_dev_below_first_deviation);
    j.key("error");
    j.optional(p.error);
    j.end_object();
  }
  j.end_array();
  j.end_object();
  return j.finish();
}

std::string serialize_commutator(const CommutatorDefect& d, const TransformParams& params,
                                 const BasisSpec& basis, ExportFormat format,
                                 std::string_view command) {
  if (format == ExportFormat::Csv) {
    return "n_dim,max_diag_deviation,last_diag_re,last_diag_im,max_offdiag\n" +
           csv_line({std::to_string(d.n_dim), format_double(d.max_diag_deviation),
                     format_double(d.last_diagonal.real()),
                     format_double(d.last_diagonal.imag()), format_double(d.max_offdiag)});
  }
  JsonWriter j;
  j.begin_object();
  j.field("command", command);
  j.key("config");
  j.begin_object();
  write_basis(j, basis);
  write_params(j, params);
  j.end_object();
  j.key("summary");
  j.begin_object();
  j.field("max_diag_deviation", d.max_diag_deviation);
  j.field("last_diag_re", d.last_diagonal.real());
  j.field("last_diag_im", d.last_diagonal.imag());
  j.field("max_offdiag", d.max_offdiag);
  j.end_object();
  j.end_object();
  return j.finish();
}

std::string serialize_duality(const DualityResult& r, const TransformParams& params,
                              const BasisSpec& basis, ExportFormat format,
                              std::string_view command) {
  if (format == ExportFormat::Csv) {
    return "distance,matrix_norm,relative_distance\n" +
           csv_line({format_double(r.distance), format_double(r.matrix_norm),
                     format_double(r.matrix_norm > 0 ? r.distance / r.matrix_norm : 0.0)});
  }
  JsonWriter j;
  j.begin_object();
  j.field("command", command);
  j.key("config");
  j.begin_object();
  write_basis(j, basis);
  write_params(j, params);
  j.end_object();
  j.key("dual_config");
  j.begin_object();
  write_basis(j, r.dual_basis);
  write_params(j, r.dual_params);
  j.end_object();
  j.key("summary");
  j.begin_object();
  j.field("distance", r.distance);
  j.field("matrix_norm", r.matrix_norm);
  j.field("relative_distance", r.matrix_norm > 0 ? r.distance / r.matrix_norm : 0.0);
  j.end_object();
  j.end_object();
  return j.finish();
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw Error(ErrorKind::IoFailure, "cannot open '" + path + "': " + std::strerror(errno));
  }
  f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  f.close();
  if (!f) {
    throw Error(ErrorKind::IoFailure, "write to '" + path + "' failed: " + std::strerror(errno));
  }
}

}  // namespace nhosc

#pragma once

// Round-trip CSV persistence for sampled waveforms and frequency traces.
// Numbers are serialized with enough digits to reproduce the exact double
// and parsed locale-independently. Files are built in memory and written in
// one call so a failed run never leaves a truncated file behind.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "errors.hpp"
#include "estimators.hpp"
#include "signals.hpp"

namespace genfreq {

/// Shortest decimal form that parses back to exactly the same double.
inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general);
  if (ec != std::errc{}) throw CsvError("format_double: conversion failed");
  return std::string(buf, ptr);
}

namespace detail {

inline double parse_double(std::string_view tok, const std::string& where) {
  double value = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw CsvError(where + ": malformed number '" + std::string(tok) + "'");
  }
  return value;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CsvError(path.string() + ": cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw CsvError(path.string() + ": write failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw CsvError(path.string() + ": rename failed: " + ec.message());
  }
}

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvError(path.string() + ": cannot open for reading");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// "# key=value" metadata comment; returns the value or throws.
inline std::string_view metadata_value(std::string_view line, std::string_view key,
                                       const std::string& where) {
  std::string_view s = strip_cr(line);
  const std::string prefix = "# " + std::string(key) + "=";
  if (s.substr(0, prefix.size()) != prefix) {
    throw CsvError(where + ": expected '" + prefix + "...' metadata line");
  }
  return s.substr(prefix.size());
}

}  // namespace detail

/// Waveform layout:
///   # sample_rate=<fs>
///   # t0=<t0>
///   # channels=<c1>,<c2>,...
///   t,<c1>,<c2>,...
///   <t>,<v1>,<v2>,...
inline void write_waveform(const std::filesystem::path& path, const SampledSignal& sig) {
  std::string out;
  out.reserve(64 * sig.n_samples());
  out += "# sample_rate=" + format_double(sig.sample_rate()) + "\n";
  out += "# t0=" + format_double(sig.t0()) + "\n";
  out += "# channels=";
  for (std::size_t c = 0; c < sig.dim(); ++c) {
    if (c) out += ',';
    out += sig.channels()[c];
  }
  out += "\nt";
  for (const auto& name : sig.channels()) {
    out += ',';
    out += name;
  }
  out += '\n';
  for (std::size_t k = 0; k < sig.n_samples(); ++k) {
    out += format_double(sig.time(k));
    for (std::size_t c = 0; c < sig.dim(); ++c) {
      out += ',';
      out += format_double(sig.at(k, c));
    }
    out += '\n';
  }
  detail::write_file_atomic(path, out);
}

inline SampledSignal read_waveform(const std::filesystem::path& path) {
  const auto lines = detail::read_lines(path);
  auto where = [&](std::size_t lineno) {
    return path.string() + ":" + std::to_string(lineno);
  };
  if (lines.size() < 6) {
    throw CsvError(path.string() + ": too short to be a waveform file");
  }

  const double fs = detail::parse_double(
      detail::metadata_value(lines[0], "sample_rate", where(1)), where(1));
  const double t0 = detail::parse_double(
      detail::metadata_value(lines[1], "t0", where(2)), where(2));
  std::vector<std::string> channels;
  for (auto tok : detail::split_csv(detail::metadata_value(lines[2], "channels", where(3)))) {
    if (tok.empty()) throw CsvError(where(3) + ": empty channel name");
    channels.emplace_back(tok);
  }
  if (!(fs > 0.0)) throw CsvError(where(1) + ": sample_rate must be positive");

  const auto header = detail::split_csv(detail::strip_cr(lines[3]));
  if (header.empty() || header[0] != "t" || header.size() != channels.size() + 1) {
    throw CsvError(where(4) + ": header must be 't,<channels...>'");
  }
  for (std::size_t c = 0; c < channels.size(); ++c) {
    if (header[c + 1] != channels[c]) {
      throw CsvError(where(4) + ": header channel '" + std::string(header[c + 1]) +
                     "' does not match metadata '" + channels[c] + "'");
    }
  }

  const double dt = 1.0 / fs;
  std::vector<double> data;
  data.reserve((lines.size() - 4) * channels.size());
  double prev_t = -std::numeric_limits<double>::infinity();
  std::size_t k = 0;
  for (std::size_t ln = 4; ln < lines.size(); ++ln, ++k) {
    const auto line = detail::strip_cr(lines[ln]);
    if (line.empty()) {
      if (ln + 1 != lines.size()) throw CsvError(where(ln + 1) + ": blank line inside data");
      --k;
      continue;
    }
    const auto tokens = detail::split_csv(line);
    if (tokens.size() != channels.size() + 1) {
      throw CsvError(where(ln + 1) + ": expected " + std::to_string(channels.size() + 1) +
                     " fields, got " + std::to_string(tokens.size()));
    }
    const double t = detail::parse_double(tokens[0], where(ln + 1));
    const double expected = t0 + static_cast<double>(k) * dt;
    if (std::abs(t - expected) > 1e-9 * (std::abs(expected) + dt)) {
      throw CsvError(where(ln + 1) + ": sample time " + format_double(t) +
                     " is off the uniform grid (expected " + format_double(expected) + ")");
    }
    if (!(t > prev_t)) throw CsvError(where(ln + 1) + ": sample times must increase");
    prev_t = t;
    for (std::size_t c = 0; c < channels.size(); ++c) {
      data.push_back(detail::parse_double(tokens[c + 1], where(ln + 1)));
    }
  }
  try {
    return SampledSignal(fs, t0, std::move(channels), std::move(data));
  } catch (const Error& e) {
    throw CsvError(path.string() + ": " + e.what());
  }
}

/// Trace layout (bivector coefficients use 1-based index pairs, row-major
/// over the strict upper triangle):
///   # dim=<n>
///   t,rho,omega,omega_hz,valid,b_1_2,b_1_3,...
inline void write_trace(const std::filesystem::path& path, const FrequencyTrace& trace) {
  if (trace.size() == 0) throw InvalidParameter("write_trace: empty trace");
  const std::size_t dim = trace.omega_biv[0].dim();

  std::string out;
  out.reserve(96 * trace.size());
  out += "# dim=" + std::to_string(dim) + "\n";
  out += "t,rho,omega,omega_hz,valid";
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      out += ",b_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
    }
  }
  out += '\n';
  for (std::size_t k = 0; k < trace.size(); ++k) {
    out += format_double(trace.t[k]);
    out += ',';
    out += format_double(trace.rho[k]);
    out += ',';
    out += format_double(trace.omega_mag[k]);
    out += ',';
    out += format_double(trace.omega_hz(k));
    out += ',';
    out += trace.valid[k] ? '1' : '0';
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = i + 1; j < dim; ++j) {
        out += ',';
        out += format_double(trace.omega_biv[k].coeff(i, j));
      }
    }
    out += '\n';
  }
  detail::write_file_atomic(path, out);
}

inline FrequencyTrace read_trace(const std::filesystem::path& path) {
  const auto lines = detail::read_lines(path);
  auto where = [&](std::size_t lineno) {
    return path.string() + ":" + std::to_string(lineno);
  };
  if (lines.size() < 3) throw CsvError(path.string() + ": too short to be a trace file");

  const std::string_view dim_tok = detail::metadata_value(lines[0], "dim", where(1));
  std::size_t dim = 0;
  {
    const char* first = dim_tok.data();
    const char* last = dim_tok.data() + dim_tok.size();
    auto [ptr, ec] = std::from_chars(first, last, dim);
    if (ec != std::errc{} || ptr != last || dim < 1) {
      throw CsvError(where(1) + ": malformed dim '" + std::string(dim_tok) + "'");
    }
  }
  const std::size_t m = dim * (dim - 1) / 2;

  // Bivector columns are optional; without them the rotation plane is taken
  // to be the 1-2 plane and the coefficient is omega itself.
  const auto header = detail::split_csv(detail::strip_cr(lines[1]));
  const bool has_biv = header.size() != 5;
  const std::size_t expected_fields = has_biv ? 5 + m : 5;
  if (header.size() != expected_fields || header[0] != "t" || header[1] != "rho" ||
      header[2] != "omega" || header[3] != "omega_hz" || header[4] != "valid") {
    throw CsvError(where(2) + ": header must be 't,rho,omega,omega_hz,valid[,b_i_j...]'");
  }
  if (has_biv) {
    std::size_t col = 5;
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = i + 1; j < dim; ++j, ++col) {
        const std::string want =
            "b_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
        if (header[col] != want) {
          throw CsvError(where(2) + ": expected column '" + want + "', got '" +
                         std::string(header[col]) + "'");
        }
      }
    }
  }

  FrequencyTrace trace;
  double prev_t = -std::numeric_limits<double>::infinity();
  for (std::size_t ln = 2; ln < lines.size(); ++ln) {
    const auto line = detail::strip_cr(lines[ln]);
    if (line.empty()) {
      if (ln + 1 != lines.size()) throw CsvError(where(ln + 1) + ": blank line inside data");
      continue;
    }
    const auto tokens = detail::split_csv(line);
    if (tokens.size() != expected_fields) {
      throw CsvError(where(ln + 1) + ": expected " + std::to_string(expected_fields) +
                     " fields, got " + std::to_string(tokens.size()));
    }
    const double t = detail::parse_double(tokens[0], where(ln + 1));
    if (!(t > prev_t)) throw CsvError(where(ln + 1) + ": sample times must increase");
    prev_t = t;

    const double rho = detail::parse_double(tokens[1], where(ln + 1));
    const double omega = detail::parse_double(tokens[2], where(ln + 1));
    const double omega_hz = detail::parse_double(tokens[3], where(ln + 1));
    std::uint8_t valid = 0;
    if (tokens[4] == "1") {
      valid = 1;
    } else if (tokens[4] != "0") {
      throw CsvError(where(ln + 1) + ": valid flag must be 0 or 1");
    }
    if (valid && omega < 0.0) {
      throw CsvError(where(ln + 1) + ": omega must be non-negative on valid samples");
    }
    const double hz_expected = omega / (2.0 * std::numbers::pi);
    if (std::abs(omega_hz - hz_expected) > 1e-9 * (std::abs(hz_expected) + 1.0)) {
      throw CsvError(where(ln + 1) + ": omega_hz is inconsistent with omega");
    }

    Bivector biv(dim);
    if (has_biv) {
      std::size_t col = 5;
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j, ++col) {
          biv.set_coeff(i, j, detail::parse_double(tokens[col], where(ln + 1)));
        }
      }
    } else if (dim >= 2) {
      biv.set_coeff(0, 1, omega);
    }

    trace.t.push_back(t);
    trace.rho.push_back(rho);
    trace.omega_mag.push_back(omega);
    trace.omega_biv.push_back(std::move(biv));
    trace.valid.push_back(valid);
  }
  if (trace.size() == 0) throw CsvError(path.string() + ": trace contains no samples");
  return trace;
}

/// Comparison report as a single-row CSV.
inline void write_report(const std::filesystem::path& path, const ComparisonReport& report) {
  std::string out = "rmse_omega,max_abs_dev,settle_time_a,settle_time_b,n_compared\n";
  out += format_double(report.rmse_omega);
  out += ',';
  out += format_double(report.max_abs_dev);
  out += ',';
  out += format_double(report.settle_time_a);
  out += ',';
  out += format_double(report.settle_time_b);
  out += ',';
  out += std::to_string(report.n_compared);
  out += '\n';
  detail::write_file_atomic(path, out);
}

}  // namespace genfreq

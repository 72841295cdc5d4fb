#include "hbopt/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace hbopt {

namespace {

[[noreturn]] void parse_fail(size_t line_no, const std::string& what) {
  throw std::runtime_error("parse error at line " + std::to_string(line_no) + ": " + what);
}

bool parse_double_strict(const std::string& tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;  // from_chars rejects a leading '+'
  if (first == last) return false;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool parse_long_strict(const std::string& tok, long& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

Dataset parse_libsvm(std::istream& in, std::string name) {
  Dataset ds;
  ds.name = std::move(name);
  std::vector<std::vector<std::pair<int, double>>> raw;
  int max_index = -1;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank line

    double label_value = 0.0;
    if (!parse_double_strict(tok, label_value)) parse_fail(line_no, "bad label token \"" + tok + "\"");
    double label;
    if (label_value == 1.0) label = 1.0;
    else if (label_value == 0.0 || label_value == -1.0) label = -1.0;
    else parse_fail(line_no, "label outside {0, 1, -1, +1}: \"" + tok + "\"");

    std::vector<std::pair<int, double>> entries;
    int prev_index = 0;  // external indices are 1-based
    while (ls >> tok) {
      const size_t colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
        parse_fail(line_no, "bad feature token \"" + tok + "\"");
      long idx = 0;
      if (!parse_long_strict(tok.substr(0, colon), idx))
        parse_fail(line_no, "bad feature index in \"" + tok + "\"");
      if (idx <= 0) parse_fail(line_no, "feature index must be positive in \"" + tok + "\"");
      if (idx <= prev_index) parse_fail(line_no, "feature indices must increase in \"" + tok + "\"");
      double val = 0.0;
      if (!parse_double_strict(tok.substr(colon + 1), val))
        parse_fail(line_no, "bad feature value in \"" + tok + "\"");
      prev_index = static_cast<int>(idx);
      entries.emplace_back(static_cast<int>(idx) - 1, val);
      max_index = std::max(max_index, static_cast<int>(idx) - 1);
    }
    raw.push_back(std::move(entries));
    ds.labels.push_back(label);
  }
  ds.dim = max_index + 1;
  const int vec_dim = std::max(ds.dim, 1);
  ds.samples.reserve(raw.size());
  for (auto& entries : raw) {
    ds.samples.push_back(Vector::sparse(vec_dim, std::move(entries)));
  }
  return ds;
}

Dataset load_libsvm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  const size_t slash = path.find_last_of('/');
  return parse_libsvm(in, slash == std::string::npos ? path : path.substr(slash + 1));
}

std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

const char* const kTraceCsvHeader =
    "t,f_individual,f_averaged,gap_individual,gap_averaged,alpha_t,beta1_t,beta2_t,"
    "identity_residual,lemma3_slack";

namespace {

void append_record_row(std::string& row, const TraceRecord& rec) {
  row.clear();
  row += std::to_string(rec.t);
  row += ',';
  row += format_double(rec.f_individual);
  row += ',';
  row += format_double(rec.f_averaged);
  row += ',';
  if (rec.gap_individual) row += format_double(*rec.gap_individual);
  row += ',';
  if (rec.gap_averaged) row += format_double(*rec.gap_averaged);
  row += ',';
  row += format_double(rec.alpha_t);
  row += ',';
  row += format_double(rec.beta1_t);
  row += ',';
  if (rec.beta2_t) row += format_double(*rec.beta2_t);
  row += ',';
  if (rec.identity_residual) row += format_double(*rec.identity_residual);
  row += ',';
  if (rec.lemma3_slack) row += format_double(*rec.lemma3_slack);
  row += '\n';
}

}  // namespace

size_t write_trace_csv(const std::vector<TraceRecord>& records, std::ostream& out) {
  out << kTraceCsvHeader << '\n';
  std::string row;
  size_t written = 0;
  for (const auto& rec : records) {
    append_record_row(row, rec);
    out << row;
    if (!out) {
      throw std::runtime_error("trace write failed after " + std::to_string(written) +
                               " rows flushed");
    }
    ++written;
  }
  return written;
}

namespace {

std::string strip_trailing_ws(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  return s;
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    const size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_optional_field(const std::string& field, size_t row_no,
                                           const char* column) {
  if (field.empty()) return std::nullopt;
  double v = 0.0;
  if (!parse_double_strict(field, v))
    throw std::runtime_error("trace row " + std::to_string(row_no) + ": bad " + column +
                             " value \"" + field + "\"");
  return v;
}

double parse_required_field(const std::string& field, size_t row_no, const char* column) {
  const auto v = parse_optional_field(field, row_no, column);
  if (!v) throw std::runtime_error("trace row " + std::to_string(row_no) + ": missing " + column);
  return *v;
}

}  // namespace

std::vector<TraceRecord> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("trace read: empty input");
  if (strip_trailing_ws(line) != kTraceCsvHeader) {
    const auto have = split_csv_row(strip_trailing_ws(line));
    const auto want = split_csv_row(kTraceCsvHeader);
    for (size_t i = 0; i < want.size(); ++i) {
      if (i >= have.size() || have[i] != want[i])
        throw std::runtime_error("trace read: header mismatch, expected column \"" + want[i] + "\"");
    }
    throw std::runtime_error("trace read: header mismatch");
  }
  std::vector<TraceRecord> records;
  size_t row_no = 0;
  while (std::getline(in, line)) {
    ++row_no;
    line = strip_trailing_ws(line);
    if (line.empty()) continue;
    const auto fields = split_csv_row(line);
    if (fields.size() != 10)
      throw std::runtime_error("trace row " + std::to_string(row_no) + ": expected 10 fields, got " +
                               std::to_string(fields.size()));
    TraceRecord rec;
    long t = 0;
    if (!parse_long_strict(fields[0], t))
      throw std::runtime_error("trace row " + std::to_string(row_no) + ": bad t value");
    rec.t = t;
    rec.f_individual = parse_required_field(fields[1], row_no, "f_individual");
    rec.f_averaged = parse_required_field(fields[2], row_no, "f_averaged");
    rec.gap_individual = parse_optional_field(fields[3], row_no, "gap_individual");
    rec.gap_averaged = parse_optional_field(fields[4], row_no, "gap_averaged");
    rec.alpha_t = parse_required_field(fields[5], row_no, "alpha_t");
    rec.beta1_t = parse_required_field(fields[6], row_no, "beta1_t");
    rec.beta2_t = parse_optional_field(fields[7], row_no, "beta2_t");
    rec.identity_residual = parse_optional_field(fields[8], row_no, "identity_residual");
    rec.lemma3_slack = parse_optional_field(fields[9], row_no, "lemma3_slack");
    records.push_back(rec);
  }
  return records;
}

std::vector<TraceRecord> read_trace_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  return read_trace_csv(in);
}

CsvTraceSink::CsvTraceSink(const std::string& path) : out_(path), path_(path) {
  if (!out_) throw std::runtime_error("cannot open trace file for writing: " + path);
  out_ << kTraceCsvHeader << '\n';
}

void CsvTraceSink::write(const TraceRecord& rec) {
  std::string row;
  append_record_row(row, rec);
  out_ << row;
  if (!out_) {
    throw std::runtime_error("trace write to " + path_ + " failed after " +
                             std::to_string(count_) + " rows flushed");
  }
  ++count_;
}

void CsvTraceSink::flush() { out_.flush(); }

}  // namespace hbopt

#pragma once

#include <iosfwd>
#include <fstream>
#include <string>
#include <vector>

#include "hbopt/trace.hpp"
#include "hbopt/vecmath.hpp"

namespace hbopt {

// Sparse classification dataset with labels normalized to {-1, +1}.
struct Dataset {
  std::vector<Vector> samples;
  std::vector<double> labels;
  int dim = 0;  // 1 + max internal feature index
  std::string name;
};

// LibSVM text format: per line `label idx:val idx:val ...`, indices 1-based
// and strictly increasing, `#` starts a comment, blank lines skipped. Labels
// 0/1 or +-1 in the file map to -1/+1. Malformed input raises with the line
// number. Streaming, one line at a time.
Dataset parse_libsvm(std::istream& in, std::string name = "");
Dataset load_libsvm_file(const std::string& path);

// shortest decimal that round-trips to the same double
std::string format_double(double x);

extern const char* const kTraceCsvHeader;

// Fixed-order trace CSV. Absent optional fields are empty. Returns the
// number of data rows written.
size_t write_trace_csv(const std::vector<TraceRecord>& records, std::ostream& out);

// Inverse of write_trace_csv, bit-exact on every float. Header or row-arity
// mismatches raise with the offending row number.
std::vector<TraceRecord> read_trace_csv(std::istream& in);
std::vector<TraceRecord> read_trace_csv_file(const std::string& path);

// Streaming sink writing one CSV row per record.
class CsvTraceSink : public TraceSink {
 public:
  explicit CsvTraceSink(const std::string& path);
  void write(const TraceRecord& rec) override;
  size_t count() const { return count_; }
  void flush();

 private:
  std::ofstream out_;
  std::string path_;
  size_t count_ = 0;
};

}  // namespace hbopt

#pragma once

#include <optional>
#include <vector>

namespace hbopt {

// One per-iteration telemetry row. Optional fields stay empty when the run
// has no objective reference or the corresponding monitor is off.
struct TraceRecord {
  long t = 0;
  double f_individual = 0.0;
  double f_averaged = 0.0;
  std::optional<double> gap_individual;
  std::optional<double> gap_averaged;
  double alpha_t = 0.0;
  double beta1_t = 0.0;
  std::optional<double> beta2_t;
  std::optional<double> identity_residual;
  std::optional<double> lemma3_slack;
};

class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void write(const TraceRecord& rec) = 0;
};

class BufferSink : public TraceSink {
 public:
  void write(const TraceRecord& rec) override { records_.push_back(rec); }
  const std::vector<TraceRecord>& records() const { return records_; }

 private:
  std::vector<TraceRecord> records_;
};

}  // namespace hbopt

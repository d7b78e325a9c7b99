#ifndef NOTATION_METER_HPP_
#define NOTATION_METER_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "notation/tokenizer.hpp"
#include "notation/trajectory.hpp"

namespace notation {

class UntaggedSpan : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// total == prompt_tokens + completion_tokens, and
// schema + call + result <= total.
struct TokenBreakdown {
  std::size_t schema_tokens = 0;
  std::size_t call_tokens = 0;
  std::size_t result_tokens = 0;
  std::size_t prompt_tokens = 0;
  std::size_t completion_tokens = 0;
  std::size_t total = 0;

  std::size_t other_tokens() const { return total - schema_tokens - call_tokens - result_tokens; }
};

// Each span is counted once, where it first enters the conversation.
TokenBreakdown decompose(const TrajectoryRecord& tr, const Tokenizer& tok);

// Signed relative change in percent, rounded to one decimal (half away from
// zero). Empty when the baseline is zero.
struct Delta {
  std::optional<double> percent;
  std::string str() const;  // "-27.0%", "0.0%", "+4.2%" or "n/a"
};

Delta relative_delta(double value, double base);
// Same, computed exactly on integer counts.
Delta relative_delta_counts(std::size_t value, std::size_t base);
double round_one_decimal(double x);

struct DeltaReport {
  std::string baseline;
  Delta schema;
  Delta call;
  Delta result;
  Delta prompt;
  Delta completion;
  Delta total;
};

DeltaReport delta_vs_baseline(const TokenBreakdown& x, const TokenBreakdown& base,
                              std::string baseline_name = "JSON");

}  // namespace notation

#endif  // NOTATION_METER_HPP_

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "repmas/fsf.hpp"
#include "repmas/ontology.hpp"

namespace repmas::scenario {

/// All FSFs observed at one cycle, in arrival order.
struct TraceBatch {
  std::int64_t cycle = 0;
  std::vector<Fsf> fsfs;

  friend bool operator==(const TraceBatch&, const TraceBatch&) = default;
};

enum class TraceFormat { Tuple, Jsonl };

/// Reads a trace: one FSF per line, blank lines and `#` comment lines
/// skipped. Times must be non-decreasing (Error{NonMonotoneTime}); parse
/// failures raise Error{ParseError} carrying the line number.
std::vector<TraceBatch> parse_trace(std::string_view text, const Ontology& ontology,
                                    TraceFormat format = TraceFormat::Tuple);

/// `.jsonl` files are read as JSON lines, anything else as tuples.
std::vector<TraceBatch> load_trace(const std::filesystem::path& path, const Ontology& ontology);

void write_trace(std::ostream& out, const std::vector<TraceBatch>& batches,
                 TraceFormat format = TraceFormat::Tuple);

}  // namespace repmas::scenario

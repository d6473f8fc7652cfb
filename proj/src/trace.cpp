#include "repmas/trace.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "repmas/error.hpp"

namespace repmas::scenario {

std::vector<TraceBatch> parse_trace(std::string_view text, const Ontology& ontology, TraceFormat format) {
  std::vector<TraceBatch> batches;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;

    Fsf fsf;
    try {
      fsf = format == TraceFormat::Jsonl ? parse_fsf_jsonl(line, ontology) : parse_fsf(line, ontology);
    } catch (const Error& e) {
      throw Error(Errc::ParseError, e.what(), line_no);
    }
    if (!batches.empty() && fsf.time < batches.back().cycle) {
      throw Error(Errc::NonMonotoneTime,
                  "time " + std::to_string(fsf.time) + " after " + std::to_string(batches.back().cycle), line_no);
    }
    if (batches.empty() || batches.back().cycle != fsf.time) batches.push_back({fsf.time, {}});
    batches.back().fsfs.push_back(std::move(fsf));
  }
  return batches;
}

std::vector<TraceBatch> load_trace(const std::filesystem::path& path, const Ontology& ontology) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open trace " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto format = path.extension() == ".jsonl" ? TraceFormat::Jsonl : TraceFormat::Tuple;
  return parse_trace(buf.str(), ontology, format);
}

void write_trace(std::ostream& out, const std::vector<TraceBatch>& batches, TraceFormat format) {
  for (const auto& batch : batches) {
    for (const auto& fsf : batch.fsfs) {
      out << (format == TraceFormat::Jsonl ? fsf_to_jsonl(fsf) : serialize_fsf(fsf)) << '\n';
    }
  }
}

}  // namespace repmas::scenario

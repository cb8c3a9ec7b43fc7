#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pf/verifier.hpp"

namespace pf {

// malformed input; line and column are 1-based, 0 when unknown
struct SchemaError : std::runtime_error {
  int line = 0;
  int column = 0;
  SchemaError(const std::string& msg, int l, int c);
};

// normalize=true maps robots to c(R) = origin, δ(C(R)) = 1 and the pattern to its own unit SEC
Scenario parse_scenario(const std::string& text, bool normalize = true);
Scenario load_scenario(const std::string& path, bool normalize = true);
std::string emit_scenario(const Scenario& s);
void save_scenario(const Scenario& s, const std::string& path);

std::string emit_trace_record(const TraceRecord& r);
std::string emit_trace(const ExecutionTrace& t);
ExecutionTrace parse_trace(const std::string& text);
ExecutionTrace load_trace(const std::string& path);
void save_trace(const ExecutionTrace& t, const std::string& path);

std::string violations_report(const std::vector<Violation>& v, const TraceReport* rep = nullptr);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace pf

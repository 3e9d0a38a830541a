#pragma once

#include <string>

#include "gallai/normalize.hpp"

namespace testutil {

// Per-action g-delta rules: a drop..add composite (bi-chromatic edge rewritten
// into colour-1 edges) never decreases g; a move keeps the class sizes, so g
// is flat; a plain delete of a colour-2/3 edge costs at most 1.
inline void check_trace_rules(const gallai::NormalizationTrace& trace, double tol = 1e-6) {
  double g = trace.g_before;
  const auto& recs = trace.records;
  for (std::size_t i = 0; i < recs.size();) {
    const std::string& a = recs[i].action;
    if (a == "delete") {
      if (recs[i].g_after < g - 1.0 - tol)
        throw std::runtime_error("trace: delete decreased g by more than 1");
      g = recs[i].g_after;
      ++i;
      continue;
    }
    // composite: one drop followed by its add(s)
    std::size_t j = i + 1;
    while (j < recs.size() && (recs[j].action == "add" || recs[j].action == "move_add")) ++j;
    double g_end = recs[j - 1].g_after;
    if (g_end < g - tol) throw std::runtime_error("trace: rewrite decreased g");
    g = g_end;
    i = j;
  }
  if (std::abs(g - trace.g_after) > tol)
    throw std::runtime_error("trace: final g does not match the record log");
}

}  // namespace testutil

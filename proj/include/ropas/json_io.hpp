#pragma once

#include "ropas/evaluator.hpp"
#include "ropas/gadgets.hpp"
#include "ropas/solver.hpp"

#include <string>

namespace ropas {

// %.{digits}g rendering; infinities become the JSON string "inf", which the
// parsers accept back.  17 significant digits round-trip a double exactly.
std::string format_double(double v, int significant_digits);

std::string read_file(const std::string& path);                         // io_error
void write_file(const std::string& path, const std::string& content);   // io_error

// ---- instance files: {"arcs":[[u,v],...],"success":[[...]],"tasks":t,"workers":n}

instance parse_instance(const std::string& text);
instance load_instance(const std::string& path);
std::string instance_to_json(const instance& inst);

// ---- regimen files: {"nodes":{"<hex>":{"targets":[...],"value":v}},"tasks":t,"workers":n}
// node keys are the executed sets in lowercase hex (bit 0 = task 0); every
// evolution node must appear exactly once

regimen parse_regimen(const std::string& text, const instance& inst,
                      int64_t node_limit = default_node_limit);
regimen load_regimen(const std::string& path, const instance& inst,
                     int64_t node_limit = default_node_limit);
std::string regimen_to_json(const regimen& reg);

// ---- certificate files: {"claimed_rounds":r,"rounds":[[...],...]}

certificate_schedule parse_certificate(const std::string& text);
certificate_schedule load_certificate(const std::string& path);
std::string certificate_to_json(const certificate_schedule& cert);

// ---- simulation reports (output only)

std::string sim_report_to_json(const sim_report& report);

} // namespace ropas

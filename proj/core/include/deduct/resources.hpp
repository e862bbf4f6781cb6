#pragma once

#include <string>

namespace deduct::resources {

// Raw embedded copies of the files under core/resources/.
const char* turn1_preamble_raw();
const char* turn3_owa_raw();
const char* turn3_cwa_raw();
const char* trace_templates_json();

/// Resource text with the file's final newline removed.
std::string chomp(const char* raw);

}  // namespace deduct::resources

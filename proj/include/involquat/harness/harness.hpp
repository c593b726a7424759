#pragma once

// Test harness: generators, oracle, fixtures, property suites. JSON I/O
// lives in json_io.hpp (needs nlohmann/json).

#include "involquat/harness/fixtures.hpp"
#include "involquat/harness/fuzz.hpp"
#include "involquat/harness/generate.hpp"
#include "involquat/harness/oracle.hpp"
#include "involquat/harness/worked_examples.hpp"

#pragma once

#include "circuit_io.hpp"
#include "report.hpp"

#pragma once

#include <map>
#include <string>

#include "memspike/io.hpp"

namespace memspike {

// Full-adder decode thresholds measured on a physical device. Nanoamp
// scale, so they only decode hardware-series statistics, and the positive
// channel has a deliberate gap between the top two classes. Kept for
// reference and as a decode example; the simulator calibrates its own.
BandsDocument hardware_full_adder_bands();

// Every data file the project ships under presets/, path -> exact bytes.
// The committed files are generated from (and tested against) this map,
// so the library builders stay the single source of truth.
std::map<std::string, std::string> preset_files();

} // namespace memspike

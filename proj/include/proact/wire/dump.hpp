#pragma once

// name=value debug rendering, one field per line.

#include <string>

#include "proact/wire/types.hpp"

namespace proact::wire {

std::string dump(const Transaction& tx);
std::string dump(const BlockHeader& header);
std::string dump(const Block& block);

}  // namespace proact::wire

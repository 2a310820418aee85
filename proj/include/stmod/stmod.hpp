#pragma once

// Umbrella header.

#include "stmod/artriangles.hpp"
#include "stmod/constructions.hpp"
#include "stmod/fp.hpp"
#include "stmod/ghosts.hpp"
#include "stmod/group.hpp"
#include "stmod/homs.hpp"
#include "stmod/module.hpp"
#include "stmod/report.hpp"
#include "stmod/stable.hpp"
#include "stmod/words.hpp"

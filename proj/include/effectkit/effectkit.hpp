#pragma once

#include "effectkit/commands.hpp"
#include "effectkit/document.hpp"
#include "effectkit/finite.hpp"
#include "effectkit/fixtures.hpp"
#include "effectkit/ideals.hpp"
#include "effectkit/interval.hpp"
#include "effectkit/lexrep.hpp"
#include "effectkit/morphisms.hpp"
#include "effectkit/pogroup.hpp"
#include "effectkit/report.hpp"
#include "effectkit/states.hpp"

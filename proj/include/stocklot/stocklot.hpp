#pragma once

#include "stocklot/abc.hpp"
#include "stocklot/config.hpp"
#include "stocklot/date.hpp"
#include "stocklot/demand.hpp"
#include "stocklot/error.hpp"
#include "stocklot/io.hpp"
#include "stocklot/ledger.hpp"
#include "stocklot/policy.hpp"
#include "stocklot/simulate.hpp"

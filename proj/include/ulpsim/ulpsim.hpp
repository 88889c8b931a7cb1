#pragma once

#include "ulpsim/address_map.hpp"
#include "ulpsim/config_io.hpp"
#include "ulpsim/core.hpp"
#include "ulpsim/energy.hpp"
#include "ulpsim/harness.hpp"
#include "ulpsim/host_model.hpp"
#include "ulpsim/llc.hpp"
#include "ulpsim/mem_backends.hpp"
#include "ulpsim/pmca_model.hpp"
#include "ulpsim/power_model.hpp"
#include "ulpsim/soc_config.hpp"
#include "ulpsim/traces.hpp"

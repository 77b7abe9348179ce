#pragma once

#include "cryoctl/units.hpp"
#include "cryoctl/errors.hpp"
#include "cryoctl/tech.hpp"
#include "cryoctl/scenario_io.hpp"
#include "cryoctl/noise.hpp"
#include "cryoctl/temperature.hpp"
#include "cryoctl/dac.hpp"
#include "cryoctl/analog_chain.hpp"
#include "cryoctl/digital.hpp"
#include "cryoctl/report.hpp"
#include "cryoctl/report_io.hpp"
#include "cryoctl/sim/protocol.hpp"
#include "cryoctl/sim/memory_bank.hpp"
#include "cryoctl/sim/trace.hpp"
#include "cryoctl/sim/data_input.hpp"
#include "cryoctl/sim/bias_control.hpp"
#include "cryoctl/sim/rf_control.hpp"
#include "cryoctl/sim/stimulus.hpp"
#include "cryoctl/sim/simulator.hpp"

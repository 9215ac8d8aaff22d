#pragma once

#include "cwa/closure.hpp"
#include "cwa/cq.hpp"
#include "cwa/error.hpp"
#include "cwa/kif.hpp"
#include "cwa/lexicon.hpp"
#include "cwa/pipeline.hpp"
#include "cwa/prover.hpp"
#include "cwa/report.hpp"
#include "cwa/taxonomy.hpp"
#include "cwa/tptp.hpp"

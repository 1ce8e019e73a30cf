#pragma once

#include "ahp/analysis.hpp"
#include "ahp/crisp.hpp"
#include "ahp/decision_log.hpp"
#include "ahp/elicitation.hpp"
#include "ahp/error.hpp"
#include "ahp/evaluation.hpp"
#include "ahp/fuzzy.hpp"
#include "ahp/hierarchy.hpp"
#include "ahp/report.hpp"
#include "ahp/square_matrix.hpp"

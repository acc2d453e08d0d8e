#pragma once

#include "atcheck/check.hpp"
#include "atcheck/document.hpp"
#include "atcheck/dot.hpp"
#include "atcheck/ef.hpp"
#include "atcheck/error.hpp"
#include "atcheck/goal.hpp"
#include "atcheck/oracle.hpp"
#include "atcheck/path.hpp"
#include "atcheck/prop_expr.hpp"
#include "atcheck/render.hpp"
#include "atcheck/report.hpp"
#include "atcheck/satgen.hpp"
#include "atcheck/state_set.hpp"
#include "atcheck/system.hpp"
#include "atcheck/tree.hpp"
#include "atcheck/witness.hpp"

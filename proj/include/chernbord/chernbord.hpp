#pragma once

// Umbrella header.

#include "chernbord/error.hpp"
#include "chernbord/coeff.hpp"
#include "chernbord/linalg.hpp"
#include "chernbord/powerseries.hpp"
#include "chernbord/groups.hpp"
#include "chernbord/calculus.hpp"
#include "chernbord/expr.hpp"
#include "chernbord/rewrite.hpp"
#include "chernbord/parser.hpp"
#include "chernbord/chern.hpp"
#include "chernbord/completion.hpp"
#include "chernbord/corpus.hpp"
#include "chernbord/suite.hpp"

#pragma once

#include "toricy/linalg.hpp"
#include "toricy/polytope.hpp"
#include "toricy/toric.hpp"
#include "toricy/hypersurface.hpp"
#include "toricy/good_pair.hpp"
#include "toricy/bhk.hpp"
#include "toricy/hodge.hpp"
#include "toricy/survey.hpp"
#include "toricy/io.hpp"

#ifndef IMPLICITFORGE_IMPLICITFORGE_HPP
#define IMPLICITFORGE_IMPLICITFORGE_HPP

#include "implicitforge/constituents.hpp"
#include "implicitforge/error.hpp"
#include "implicitforge/eval.hpp"
#include "implicitforge/expr.hpp"
#include "implicitforge/family.hpp"
#include "implicitforge/field.hpp"
#include "implicitforge/ifld.hpp"
#include "implicitforge/marching_cubes.hpp"
#include "implicitforge/mesh.hpp"
#include "implicitforge/parametric.hpp"
#include "implicitforge/parser.hpp"
#include "implicitforge/presets.hpp"
#include "implicitforge/sensitivity.hpp"

#endif

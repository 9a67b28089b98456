#ifndef OCTAK_OCTAK_HPP
#define OCTAK_OCTAK_HPP

//! Umbrella header: the full exact-arithmetic toolkit for octahedral module
//! calculus at archimedean places. Individual headers can be included
//! directly; report.hpp (the CLI layer) is excluded here because it pulls in
//! the vendored CLI/JSON single-header libraries.

#include "abgroup.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "ktheory.hpp"
#include "norm.hpp"
#include "omod.hpp"
#include "pythag.hpp"
#include "rational.hpp"
#include "residue.hpp"
#include "sconstr.hpp"
#include "wreath.hpp"

#endif

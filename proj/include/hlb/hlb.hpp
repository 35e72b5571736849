#pragma once

#include "hlb/closed_forms.hpp"
#include "hlb/certify.hpp"
#include "hlb/errors.hpp"
#include "hlb/extended_real.hpp"
#include "hlb/forms.hpp"
#include "hlb/norm_engine.hpp"
#include "hlb/report_io.hpp"

/** Umbrella header: the full multivariate iterative-filtering toolkit. */

#ifndef MVFIF_MVFIF_HPP
#define MVFIF_MVFIF_HPP

#include "analysis.hpp"
#include "csv_io.hpp"
#include "decompose.hpp"
#include "errors.hpp"
#include "fft.hpp"
#include "filter_bank.hpp"
#include "generators.hpp"
#include "rotation.hpp"
#include "selfcheck.hpp"
#include "signal.hpp"

#endif // MVFIF_MVFIF_HPP

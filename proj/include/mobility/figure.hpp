#pragma once

#include <string>

#include "mobility/estimation.hpp"

namespace mobility {

/// Scatter of (parent, child) log-incomes with the identity line y = x and
/// the fitted line y = alpha + beta x, as a standalone SVG 1.1 document.
///
/// Both axes share one range (the data range padded by 5%) so the identity
/// line is the diagonal; points above it are the upward-mobile pairs.
/// Elements are tagged class="marker" (one circle per pair),
/// class="identity" and class="regression". Output is a pure function of the
/// inputs. Throws InsufficientData for fewer than 2 pairs.
std::string render_figure(const LogIncomeSample& sample, const RegressionFit& fit);

}  // namespace mobility

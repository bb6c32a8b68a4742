#pragma once

#include "pomodel/baseline.hpp"
#include "pomodel/counterexamples.hpp"
#include "pomodel/errors.hpp"
#include "pomodel/majorization.hpp"
#include "pomodel/order_checks.hpp"
#include "pomodel/po_model.hpp"
#include "pomodel/sweep.hpp"
#include "pomodel/systems.hpp"
#include "pomodel/theorems.hpp"

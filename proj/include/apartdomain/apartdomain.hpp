#pragma once

// Umbrella header for the apartdomain library: constructive domain theory
// with certificate-producing semi-deciders on rounded ideal completions,
// plus a classical finite-poset oracle.

#include "apartdomain/basis.hpp"
#include "apartdomain/cert_json.hpp"
#include "apartdomain/certificates.hpp"
#include "apartdomain/constructions.hpp"
#include "apartdomain/core.hpp"
#include "apartdomain/domains/finite_domains.hpp"
#include "apartdomain/domains/intervals.hpp"
#include "apartdomain/domains/lower_reals.hpp"
#include "apartdomain/domains/sequences.hpp"
#include "apartdomain/errors.hpp"
#include "apartdomain/expr.hpp"
#include "apartdomain/finite_poset.hpp"
#include "apartdomain/ideal.hpp"
#include "apartdomain/rational.hpp"
#include "apartdomain/separation.hpp"

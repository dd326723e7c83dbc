#pragma once

#include "picod/bounds.hpp"
#include "picod/caps.hpp"
#include "picod/errors.hpp"
#include "picod/gf.hpp"
#include "picod/hypergraph.hpp"
#include "picod/instance.hpp"
#include "picod/linear_code.hpp"
#include "picod/message_set.hpp"
#include "picod/oracles.hpp"
#include "picod/verifier.hpp"

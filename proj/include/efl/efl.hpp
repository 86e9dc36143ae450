#pragma once

#include "efl/bits.hpp"
#include "efl/engine.hpp"
#include "efl/error.hpp"
#include "efl/io.hpp"
#include "efl/model.hpp"
#include "efl/parser.hpp"
#include "efl/printer.hpp"
#include "efl/social.hpp"
#include "efl/syntax.hpp"
#include "efl/scenarios.hpp"
#include "efl/validity.hpp"

#pragma once

#include "gfwords/counting.hpp"
#include "gfwords/error.hpp"
#include "gfwords/finite_field.hpp"
#include "gfwords/mpcs.hpp"
#include "gfwords/periodic.hpp"
#include "gfwords/prime_words.hpp"
#include "gfwords/sl2.hpp"
#include "gfwords/words.hpp"

#pragma once

#include "shrinklab/derivation.hpp"
#include "shrinklab/grammar.hpp"
#include "shrinklab/grammar_text.hpp"
#include "shrinklab/normal_form.hpp"
#include "shrinklab/refutation.hpp"
#include "shrinklab/serialize.hpp"
#include "shrinklab/shrink.hpp"
#include "shrinklab/subword.hpp"

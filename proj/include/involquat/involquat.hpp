#pragma once

#include "involquat/error.hpp"
#include "involquat/random.hpp"
#include "involquat/field.hpp"
#include "involquat/matrix.hpp"
#include "involquat/linalg.hpp"
#include "involquat/normal_form.hpp"
#include "involquat/involution.hpp"
#include "involquat/idempotent.hpp"
#include "involquat/quaternion.hpp"
#include "involquat/construct.hpp"

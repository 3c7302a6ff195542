// Copyright 2026 The rpkit developers

#include <doctest.h>

// Copyright (c) 2026 The Veritax Authors.
// SPDX-License-Identifier: Apache-2.0

int main() { return 0; }

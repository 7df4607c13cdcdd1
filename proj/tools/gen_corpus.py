#!/usr/bin/env python3
# Copyright 2026 The hbcunify Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the seeded part of the disassembly fixture corpus.

Output is a pure function of the seed list, so re-running the script leaves
the checked-in files unchanged.
"""

import argparse
import pathlib
import random

STRINGS = ["console", "log", "warn", "NativeModules", "ToastExample", "show",
           "Cart", "add", "total", "DeviceInfo", "cacheDeviceId", "JSON",
           "parse", "stringify", "setTimeout", "state", "props", "length",
           "TurboModuleRegistry", "getEnforcing", "Locator", "sendLocation"]
NAMES = ["render", "onPress", "componentDidMount", "reducer", "selector",
         "formatPrice", "useEffect", "handler", "", "init", "render"]


class FunctionWriter:
    def __init__(self, rng, fid, name, nfuncs, names):
        self.rng = rng
        self.fid = fid
        self.name = name
        self.nfuncs = nfuncs
        self.names = names
        self.params = rng.randint(1, 3)
        self.regs = rng.randint(10, 14)
        self.lines = []
        self.labels = 0

    def r(self):
        return "r%d" % self.rng.randrange(self.regs)

    def s(self, text):
        return "s%d" % STRINGS.index(text)

    def label(self):
        self.labels += 1
        return "L%d" % self.labels

    def emit(self, text):
        self.lines.append("  " + text)

    def console_call(self):
        self.emit("GetGlobalObject r0")
        self.emit("TryGetById r1, r0, 1, %s" % self.s("console"))
        self.emit("GetByIdShort r2, r1, 2, %s" % self.s(self.rng.choice(["log", "warn"])))
        self.emit('LoadConstString r3, "%s"' % self.rng.choice(["ready", "tick", "value:"]))
        self.emit("Call2 r4, r2, r1, r3")

    def bridge_call(self):
        mod, meth = self.rng.choice([("ToastExample", "show"), ("Cart", "add"),
                                     ("Cart", "total"), ("DeviceInfo", "cacheDeviceId")])
        self.emit("GetGlobalObject r0")
        self.emit("TryGetById r1, r0, 3, %s" % self.s("NativeModules"))
        self.emit("GetByIdShort r2, r1, 4, %s" % self.s(mod))
        self.emit("GetByIdShort r3, r2, 5, %s" % self.s(meth))
        self.emit("LoadConstInt r4, %d" % self.rng.randint(0, 99))
        argc = self.rng.randint(1, 3)
        self.emit("Call%d r5, r3, r2%s" % (argc, ", r4" * (argc - 1)))

    def registry_call(self):
        self.emit("GetGlobalObject r0")
        self.emit("TryGetById r1, r0, 6, %s" % self.s("TurboModuleRegistry"))
        self.emit("GetByIdShort r2, r1, 7, %s" % self.s("getEnforcing"))
        self.emit('LoadConstString r3, "Locator"')
        self.emit("Call2 r4, r2, r1, r3")
        self.emit("GetByIdShort r5, r4, 8, %s" % self.s("sendLocation"))
        self.emit('LoadConstString r6, "here"')
        self.emit("Call2 r7, r5, r4, r6")

    def closure_call(self):
        target = self.rng.randrange(1, self.nfuncs)
        self.emit("GetGlobalObject r0")
        self.emit("CreateClosure r6, r0, Function<%s>#%d" % (self.names[target], target))
        argc = self.rng.randint(1, 4)
        self.emit("Call%d r7, r6, r0%s" % (argc, "".join(", " + self.r() for _ in range(argc - 1))))

    def loop(self):
        head, done = self.label(), self.label()
        self.emit("LoadConstZero r6")
        self.emit("LoadConstInt r7, %d" % self.rng.randint(2, 20))
        self.lines.append(head + ":")
        self.emit("JGreaterEqual %s, r6, r7" % done)
        self.emit("Add r5, r5, r6")
        self.emit("Inc r6, r6")
        self.emit("Jmp %s" % head)
        self.lines.append(done + ":")

    def branch(self):
        other = self.label()
        self.emit("LoadParam r5, %d" % self.rng.randint(0, self.params - 1))
        self.emit("JmpFalse %s, r5" % other)
        self.emit("LoadConstString r6, \"yes\"")
        self.emit("Mov r5, r6")
        self.lines.append(other + ":")

    def object_build(self):
        self.emit("NewObject r6")
        self.emit("LoadConstInt r7, %d" % self.rng.randint(0, 9))
        self.emit("PutById r6, r7, 9, %s" % self.s(self.rng.choice(["state", "props"])))
        self.emit("GetById r8, r6, 10, %s" % self.s("length"))
        self.emit("Sub r8, r8, r7")

    def arithmetic(self):
        op = self.rng.choice(["Add", "Sub", "Mul", "Div"])
        self.emit("LoadConstDouble r6, %s" % self.rng.choice(["0.5", "2.25", "100"]))
        self.emit("%s r7, r6, r6" % op)

    def write(self):
        header = "Function<%s>(%d params, %d registers, 0 symbols):" % (
            self.name, self.params, self.regs)
        self.emit("LoadConstZero r5")
        pieces = [self.console_call, self.bridge_call, self.registry_call,
                  self.loop, self.branch, self.object_build, self.arithmetic]
        if self.nfuncs > 1:
            pieces.append(self.closure_call)
        for _ in range(self.rng.randint(1, 4)):
            self.rng.choice(pieces)()
        if self.rng.random() < 0.15:
            self.emit('LoadConstString r9, "a very long liter"...')
        self.emit("Ret r5")
        return header, self.lines


def document(seed):
    rng = random.Random(seed)
    nfuncs = rng.randint(7, 12)
    names = ["global"] + [rng.choice(NAMES) for _ in range(nfuncs - 1)]
    out = ["FILE HEADER:", "  Bytecode version: 90", "STRING TABLE&STORAGE:"]
    out += ['  s%d: "%s"' % (i, s) for i, s in enumerate(STRINGS)]
    for fid, name in enumerate(names):
        header, body = FunctionWriter(rng, fid, name, nfuncs, names).write()
        out += ["", header] + body
    return "\n".join(out) + "\n"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="tests/fixtures/corpus")
    parser.add_argument("--count", type=int, default=24)
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for seed in range(1, args.count + 1):
        (out / ("app_%02d.hasm" % seed)).write_text(document(seed))


if __name__ == "__main__":
    main()

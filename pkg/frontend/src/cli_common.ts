/** Flag parsing shared by the render scripts. */

export function parseFlags(argv: string[], known: string[]): Map<string, string> {
  const flags = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    const value = argv[i + 1];
    if (!known.includes(key)) {
      throw new Error(`unknown flag '${key}' (known: ${known.join(", ")})`);
    }
    if (value === undefined) {
      throw new Error(`flag '${key}' needs a value`);
    }
    flags.set(key, value);
  }
  return flags;
}

export function fail(message: string): never {
  process.stderr.write(`error: ${message}\n`);
  process.exit(1);
}

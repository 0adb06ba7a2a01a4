from fuzzyfusion.cli import entry

entry()

from app.commands import ecc, fragility, mcm, simulate, stats, udg

COMMANDS = [udg, ecc, mcm, stats, simulate, fragility]

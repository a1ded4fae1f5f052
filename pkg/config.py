# Configurações do ITL Kernel

# Orçamento de busca padrão (sobrescrito por perfis e flags da CLI)
MAX_DEPTH = 2500
MAX_INSTANTIATIONS = 24
MAX_AXIOM_INSTANCES = 64
TERM_UNIVERSE_DEPTH = 1
TIME_LIMIT = 60.0

# Fechamento rápido: passos determinísticos tentados antes de ramificar
QUICK_CLOSE_STEPS = 6

# Normalização beta-eta
NORMALIZE_STEP_LIMIT = 20000

# Contramodelos
MAX_CARRIER_ROUNDS = 4
MAX_FIXPOINT_ROUNDS = 12

# Prefixos reservados (não podem ser declarados pelo usuário)
RESERVED_PREFIX = "_"
FRESH_CONSTANT_PREFIX = "_c"
EQUALITY_VARIABLE_PREFIX = "_z"
WORLD_VARIABLE_PREFIX = "_w"
INHABITANT_VARIABLE_PREFIX = "_x"
TOKEN_NAME_PREFIX = "_tok_"

# Constantes do módulo de mundos
OMEGA_NAME = "Omega"
ACTUAL_WORLD_NAME = "w0"

# Perfis de orçamento
PROFILES_DIR = "profiles"
DEFAULT_PROFILE = "Padrao"

# Logging
LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"

# Códigos de saída da CLI
EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3

"""
Configuración global del proyecto Dirac Thermo.
"""

from pathlib import Path

from scipy import constants

# Rutas del proyecto
PROJECT_ROOT = Path(__file__).parent.parent
DATA_DIR = PROJECT_ROOT / "data"
OUTPUT_DIR = DATA_DIR / "output"

# Logging
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# Constantes físicas (SI)
BOLTZMANN_SI = constants.k  # J/K
ELECTRON_REST_ENERGY_SI = constants.physical_constants["electron mass energy equivalent"][0]  # J

# Sumación directa
DEFAULT_REL_TOL = 1e-12
DEFAULT_K_MAX = 10**7
SUM_CHUNK_START = 1024
SUM_CHUNK_MAX = 2**20

# Euler-MacLaurin (hasta f''')
EM_MAX_ORDER = 2
BERNOULLI_MAX_INDEX = 20

# Cuadratura de referencia
QUAD_REL_TOL = 1e-10
QUAD_SUBDIVISION_LIMIT = 200
QUAD_SEGMENTS = (1, 2, 4, 8, 16, 32, 64)  # en unidades de la escala de decaimiento

# Diferencias finitas
FD_BETA_STEP = 1e-5  # paso relativo en beta
FD_DERIVATIVE_STEP = 5e-3  # paso relativo a la escala de variación de f
FD_DERIVATIVE_TOL = 1e-6

# Régimen de alta temperatura: aviso si a o b superan este valor
HIGH_T_VALIDITY_LIMIT = 0.1

# Barridos por defecto (unidades naturales, m0 = 1)
DEFAULT_TAU_MIN = 0.01
DEFAULT_TAU_MAX = 2.0
DEFAULT_POINTS = 200
DEFAULT_XI_VALUES = (1.0, 5.0, 10.0, 15.0)
DEFAULT_WORKERS = 1

# Formato CSV
CSV_FLOAT_FORMAT = "%.12g"
CSV_ENCODING = "utf-8"
SWEEP_COLUMNS = [
    "regime",
    "method",
    "tau",
    "xi",
    "mu_b",
    "ln_z",
    "F_bar",
    "U_bar",
    "S_bar",
    "Cv_bar",
    "validity_flag",
]
QUANTITY_COLUMNS = ["ln_z", "F_bar", "U_bar", "S_bar", "Cv_bar"]

# Etiquetas de validez
FLAG_OK = "ok"
FLAG_HIGH_T_WARNING = "high-t-warning"

# Tolerancias de la auditoría U = F + T·S
IDENTITY_TOL_CLOSED_FORM = 1e-9
IDENTITY_TOL_SERIES = 1e-9

# Colores para las series de las gráficas (uno por valor de xi)
SERIES_COLORS = ["#E74C3C", "#27AE60", "#F39C12", "#3498DB", "#8E44AD", "#95A5A6"]
SVG_HASH_SALT = "dirac-thermo"

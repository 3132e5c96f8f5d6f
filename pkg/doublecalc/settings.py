import os

from pathlib import Path

from dotenv import load_dotenv

# Carregar variáveis do .env
load_dotenv()

# Diretório base do projeto
BASE_DIR = Path(__file__).resolve().parent.parent

# Segurança
SECRET_KEY = os.getenv('SECRET_KEY', 'doublecalc-local-only')
DEBUG = os.getenv('DEBUG', 'False') == 'True'
ALLOWED_HOSTS = []

# Aplicativos instalados
INSTALLED_APPS = [
    'ggdouble',
]

# Sem banco de dados: todos os valores são imutáveis e vivem em memória
DATABASES = {}

# Internacionalização
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# Limites das construções (truncamentos, filtrações, buscas exaustivas)
GGD_DEPTH = int(os.getenv('GGD_DEPTH', 2))
GGD_WORD_BOUND = int(os.getenv('GGD_WORD_BOUND', 4))
GGD_KMAX = int(os.getenv('GGD_KMAX', 8))
GGD_SEED = int(os.getenv('GGD_SEED', 0))
GGD_SIZE_BOUND = int(os.getenv('GGD_SIZE_BOUND', 60000))
GGD_MINIMALITY_THRESHOLD = int(os.getenv('GGD_MINIMALITY_THRESHOLD', 12))
GGD_FAITHFUL_THRESHOLD = int(os.getenv('GGD_FAITHFUL_THRESHOLD', 10))
GGD_DECIDE_EFFORT = int(os.getenv('GGD_DECIDE_EFFORT', 200))

# Corpus de apresentações (.dcat) e termos (.term)
GGD_CORPUS_DIR = BASE_DIR / 'ggdouble' / 'corpus'

# Logging
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'ggdouble': {
            'handlers': ['console'],
            'level': os.getenv('GGD_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
    },
}

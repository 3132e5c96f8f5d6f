import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'doublecalc.settings')
django.setup()

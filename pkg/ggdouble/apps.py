from django.apps import AppConfig


class GgdoubleConfig(AppConfig):
    name = 'ggdouble'
    verbose_name = "Free globularly generated double categories"
